/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_INCLUDE_MINHOM_TYPES_HH
#define MINHOM_GUARD_INCLUDE_MINHOM_TYPES_HH 1

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace minhom
{
    using Rational = mpq_class;

    // Targets are small, so a set of target vertices fits in one word.
    using VertexMask = std::uint64_t;

    constexpr int max_target_size = 64;

    inline auto bit(int v) -> VertexMask
    {
        return VertexMask{1} << v;
    }

    inline auto has_bit(VertexMask m, int v) -> bool
    {
        return (m >> v) & 1;
    }

    inline auto popcount(VertexMask m) -> int
    {
        return std::popcount(m);
    }

    inline auto lowest_bit(VertexMask m) -> int
    {
        return std::countr_zero(m);
    }

    inline auto all_bits(int n) -> VertexMask
    {
        return n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
    }

    template <typename F_>
    auto for_each_bit(VertexMask m, F_ && f) -> void
    {
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            f(v);
        }
    }

    auto mask_to_vector(VertexMask m) -> std::vector<int>;

    enum class ErrorKind
    {
        Empty,
        SizeLimit,
        NotMinOrdering,
        NotKminOrdering,
        EmptyList,
        NotCyclic,
        NotBiarc,
        NotDatFree,
        NotBiarcStar,
        Infeasible,
        Internal,
        EmptyCandidates,
        ParseError,
        BadOrder,
        BadArgument
    };

    auto error_kind_name(ErrorKind) -> std::string;

    class MinHomError :
        public std::runtime_error
    {
        private:
            ErrorKind _kind;
            int _line;

        public:
            MinHomError(ErrorKind kind, const std::string & message, int line = -1);

            auto kind() const -> ErrorKind;
            auto line() const -> int;
    };

    // A nonnegative rational, or +infinity.
    class Cost
    {
        private:
            Rational _value;
            bool _infinite = false;

        public:
            Cost() = default;
            Cost(const Rational & value);
            Cost(long value);

            static auto infinite() -> Cost;

            auto is_infinite() const -> bool;
            auto value() const -> const Rational &;
            auto to_string() const -> std::string;
            auto to_double() const -> double;

            friend auto operator+ (const Cost &, const Cost &) -> Cost;
            friend auto operator== (const Cost &, const Cost &) -> bool;
            friend auto operator< (const Cost &, const Cost &) -> bool;
    };

    // Accepts integers, "p/q" fractions, decimals, and "inf".
    auto parse_cost(const std::string &) -> Cost;
    auto parse_rational(const std::string &) -> Rational;

    auto rational_to_string(const Rational &) -> std::string;
    auto rational_to_double(const Rational &) -> double;

    // Best rational approximation with bounded denominator.
    auto rationalize(double value, long max_denominator) -> Rational;
}

#endif

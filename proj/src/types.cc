/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/types.hh>

#include <cmath>
#include <limits>

using std::string;
using std::vector;

namespace minhom
{
    auto mask_to_vector(VertexMask m) -> vector<int>
    {
        vector<int> result;
        for_each_bit(m, [&] (int v) { result.push_back(v); });
        return result;
    }

    auto error_kind_name(ErrorKind kind) -> string
    {
        switch (kind) {
            case ErrorKind::Empty:           return "EMPTY";
            case ErrorKind::SizeLimit:       return "SIZE_LIMIT";
            case ErrorKind::NotMinOrdering:  return "NOT_MIN_ORDERING";
            case ErrorKind::NotKminOrdering: return "NOT_KMIN_ORDERING";
            case ErrorKind::EmptyList:       return "EMPTY_LIST";
            case ErrorKind::NotCyclic:       return "NOT_CYCLIC";
            case ErrorKind::NotBiarc:        return "NOT_BIARC";
            case ErrorKind::NotDatFree:      return "NOT_DAT_FREE";
            case ErrorKind::NotBiarcStar:    return "NOT_BIARC_STAR";
            case ErrorKind::Infeasible:      return "INFEASIBLE";
            case ErrorKind::Internal:        return "INTERNAL";
            case ErrorKind::EmptyCandidates: return "EMPTY_CANDIDATES";
            case ErrorKind::ParseError:      return "PARSE_ERROR";
            case ErrorKind::BadOrder:        return "BAD_ORDER";
            case ErrorKind::BadArgument:     return "BAD_ARGUMENT";
        }
        return "INTERNAL";
    }

    MinHomError::MinHomError(ErrorKind kind, const string & message, int line) :
        std::runtime_error(error_kind_name(kind) + ": " + message +
                (line >= 0 ? " (line " + std::to_string(line) + ")" : "")),
        _kind(kind),
        _line(line)
    {
    }

    auto MinHomError::kind() const -> ErrorKind
    {
        return _kind;
    }

    auto MinHomError::line() const -> int
    {
        return _line;
    }

    Cost::Cost(const Rational & value) :
        _value(value)
    {
        if (sgn(_value) < 0)
            throw MinHomError(ErrorKind::BadArgument, "negative cost " + value.get_str());
    }

    Cost::Cost(long value) :
        Cost(Rational(value))
    {
    }

    auto Cost::infinite() -> Cost
    {
        Cost c;
        c._infinite = true;
        return c;
    }

    auto Cost::is_infinite() const -> bool
    {
        return _infinite;
    }

    auto Cost::value() const -> const Rational &
    {
        if (_infinite)
            throw MinHomError(ErrorKind::Internal, "value of an infinite cost");
        return _value;
    }

    auto Cost::to_string() const -> string
    {
        return _infinite ? "inf" : rational_to_string(_value);
    }

    auto Cost::to_double() const -> double
    {
        return _infinite ? std::numeric_limits<double>::infinity() : _value.get_d();
    }

    auto operator+ (const Cost & a, const Cost & b) -> Cost
    {
        if (a._infinite || b._infinite)
            return Cost::infinite();
        return Cost(Rational(a._value + b._value));
    }

    auto operator== (const Cost & a, const Cost & b) -> bool
    {
        if (a._infinite || b._infinite)
            return a._infinite == b._infinite;
        return a._value == b._value;
    }

    auto operator< (const Cost & a, const Cost & b) -> bool
    {
        if (a._infinite)
            return false;
        if (b._infinite)
            return true;
        return a._value < b._value;
    }

    auto parse_rational(const string & text) -> Rational
    {
        if (text.empty())
            throw MinHomError(ErrorKind::ParseError, "empty number");

        auto dot = text.find('.');
        if (dot != string::npos) {
            string whole = text.substr(0, dot), frac = text.substr(dot + 1);
            bool negative = ! whole.empty() && whole[0] == '-';
            if (negative || (! whole.empty() && whole[0] == '+'))
                whole = whole.substr(1);
            if (whole.empty())
                whole = "0";
            if (frac.empty())
                frac = "0";
            for (char ch : whole + frac)
                if (ch < '0' || ch > '9')
                    throw MinHomError(ErrorKind::ParseError, "bad number '" + text + "'");
            mpz_class num(whole + frac, 10), den(1);
            for (unsigned i = 0 ; i < frac.size() ; ++i)
                den *= 10;
            Rational r(num, den);
            r.canonicalize();
            return negative ? Rational(-r) : r;
        }

        for (unsigned i = 0 ; i < text.size() ; ++i) {
            char ch = text[i];
            bool ok = (ch >= '0' && ch <= '9') || ch == '/' || (i == 0 && (ch == '-' || ch == '+'));
            if (! ok)
                throw MinHomError(ErrorKind::ParseError, "bad number '" + text + "'");
        }

        Rational r;
        try {
            r = Rational(text[0] == '+' ? text.substr(1) : text, 10);
        }
        catch (const std::invalid_argument &) {
            throw MinHomError(ErrorKind::ParseError, "bad number '" + text + "'");
        }
        if (r.get_den() == 0)
            throw MinHomError(ErrorKind::ParseError, "zero denominator in '" + text + "'");
        r.canonicalize();
        return r;
    }

    auto parse_cost(const string & text) -> Cost
    {
        if (text == "inf" || text == "INF" || text == "infinity")
            return Cost::infinite();
        auto r = parse_rational(text);
        if (sgn(r) < 0)
            throw MinHomError(ErrorKind::ParseError, "negative cost '" + text + "'");
        return Cost(r);
    }

    auto rational_to_string(const Rational & r) -> string
    {
        return r.get_str();
    }

    auto rational_to_double(const Rational & r) -> double
    {
        return r.get_d();
    }

    auto rationalize(double value, long max_denominator) -> Rational
    {
        if (! std::isfinite(value))
            throw MinHomError(ErrorKind::Internal, "rationalize of non-finite value");

        bool negative = value < 0;
        double x = std::fabs(value);

        // continued fraction convergents
        mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        double rest = x;
        for (int step = 0 ; step < 64 ; ++step) {
            double a = std::floor(rest);
            if (a > 1e15)
                break;
            mpz_class ai(static_cast<long>(a));
            mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
            if (q2 > max_denominator)
                break;
            p0 = p1; q0 = q1; p1 = p2; q1 = q2;
            double f = rest - a;
            if (f < 1e-15)
                break;
            rest = 1.0 / f;
        }

        if (q1 == 0)
            return Rational(static_cast<long>(std::llround(value)));

        Rational r(p1, q1);
        r.canonicalize();
        return negative ? Rational(-r) : r;
    }
}

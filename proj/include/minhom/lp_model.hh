/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_INCLUDE_MINHOM_LP_MODEL_HH
#define MINHOM_GUARD_INCLUDE_MINHOM_LP_MODEL_HH 1

#include <minhom/types.hh>

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace minhom
{
    struct LinearTerm
    {
        int var;
        long coefficient;
    };

    enum class Sense
    {
        LessEqual,
        GreaterEqual,
        Equal
    };

    struct LpConstraint
    {
        std::string family;
        std::vector<LinearTerm> terms;
        Sense sense;
        long rhs;
    };

    // Threshold variable t(v, i) reads "v is mapped to domain position i or
    // later". Position domain(v).size() is the sentinel, fixed to zero.
    struct LpVariable
    {
        int vertex;
        int position;
    };

    class LpModel
    {
        private:
            std::vector<std::vector<int> > _domains;
            std::vector<int> _first;
            std::vector<LpVariable> _variables;
            std::vector<Rational> _objective;
            std::vector<LpConstraint> _constraints;
            std::string _prefix = "t";

        public:
            LpModel() = default;
            explicit LpModel(std::vector<std::vector<int> > domains);

            auto vertex_count() const -> int;
            auto variable_count() const -> int;
            auto domain(int v) const -> const std::vector<int> &;
            auto domains() const -> const std::vector<std::vector<int> > &;
            auto threshold(int v, int position) const -> int;
            auto variable(int var) const -> const LpVariable &;
            auto variable_name(int var) const -> std::string;
            auto set_prefix(const std::string &) -> void;

            auto objective() const -> const std::vector<Rational> &;
            auto add_objective(int var, const Rational & coefficient) -> void;

            // Terms on the same variable are merged, zero terms dropped.
            auto add_constraint(const std::string & family, std::vector<LinearTerm> terms, Sense, long rhs) -> void;
            auto constraints() const -> const std::vector<LpConstraint> &;
            auto family_counts() const -> std::map<std::string, long>;
            auto count(const std::string & family) const -> long;

            // Map decoded from a 0/1 assignment, as domain entries.
            auto decode(const std::vector<int> & values) const -> std::vector<int>;
            auto decode(const std::vector<double> & values) const -> std::vector<int>;

            auto satisfied_by(const std::vector<Rational> & values) const -> bool;
            auto objective_value(const std::vector<Rational> & values) const -> Rational;

            // Thresholds of a map given as domain positions.
            auto encode(const std::vector<int> & positions) const -> std::vector<int>;
    };

    auto write_lp_format(std::ostream &, const LpModel &) -> void;
}

#endif

/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/lp_model.hh>

#include <algorithm>
#include <cstdio>

using std::map;
using std::ostream;
using std::string;
using std::to_string;
using std::vector;

namespace minhom
{
    LpModel::LpModel(vector<vector<int> > domains) :
        _domains(std::move(domains))
    {
        for (int v = 0 ; v < int(_domains.size()) ; ++v) {
            _first.push_back(int(_variables.size()));
            for (int i = 0 ; i <= int(_domains[v].size()) ; ++i)
                _variables.push_back(LpVariable{ v, i });
        }
        _objective.assign(_variables.size(), 0);
    }

    auto LpModel::vertex_count() const -> int
    {
        return int(_domains.size());
    }

    auto LpModel::variable_count() const -> int
    {
        return int(_variables.size());
    }

    auto LpModel::domain(int v) const -> const vector<int> &
    {
        return _domains.at(v);
    }

    auto LpModel::domains() const -> const vector<vector<int> > &
    {
        return _domains;
    }

    auto LpModel::threshold(int v, int position) const -> int
    {
        if (position < 0 || position > int(_domains.at(v).size()))
            throw MinHomError(ErrorKind::Internal, "threshold position out of range");
        return _first[v] + position;
    }

    auto LpModel::variable(int var) const -> const LpVariable &
    {
        return _variables.at(var);
    }

    auto LpModel::variable_name(int var) const -> string
    {
        auto & v = _variables.at(var);
        return _prefix + to_string(v.vertex) + "_" + to_string(v.position);
    }

    auto LpModel::set_prefix(const string & prefix) -> void
    {
        _prefix = prefix;
    }

    auto LpModel::objective() const -> const vector<Rational> &
    {
        return _objective;
    }

    auto LpModel::add_objective(int var, const Rational & coefficient) -> void
    {
        _objective.at(var) += coefficient;
    }

    auto LpModel::add_constraint(const string & family, vector<LinearTerm> terms, Sense sense, long rhs) -> void
    {
        std::sort(terms.begin(), terms.end(), [] (const LinearTerm & a, const LinearTerm & b) { return a.var < b.var; });
        vector<LinearTerm> merged;
        for (auto & t : terms) {
            if (! merged.empty() && merged.back().var == t.var)
                merged.back().coefficient += t.coefficient;
            else
                merged.push_back(t);
        }
        std::erase_if(merged, [] (const LinearTerm & t) { return t.coefficient == 0; });
        _constraints.push_back(LpConstraint{ family, std::move(merged), sense, rhs });
    }

    auto LpModel::constraints() const -> const vector<LpConstraint> &
    {
        return _constraints;
    }

    auto LpModel::family_counts() const -> map<string, long>
    {
        map<string, long> result;
        for (auto & c : _constraints)
            ++result[c.family];
        return result;
    }

    auto LpModel::count(const string & family) const -> long
    {
        return std::count_if(_constraints.begin(), _constraints.end(),
                [&] (const LpConstraint & c) { return c.family == family; });
    }

    auto LpModel::decode(const vector<int> & values) const -> vector<int>
    {
        vector<int> result(vertex_count(), -1);
        for (int v = 0 ; v < vertex_count() ; ++v) {
            int m = int(_domains[v].size());
            for (int i = m - 1 ; i >= 0 ; --i)
                if (values.at(threshold(v, i)) == 1) {
                    result[v] = _domains[v][i];
                    break;
                }
        }
        return result;
    }

    auto LpModel::decode(const vector<double> & values) const -> vector<int>
    {
        vector<int> rounded(values.size());
        for (unsigned i = 0 ; i < values.size() ; ++i)
            rounded[i] = values[i] > 0.5 ? 1 : 0;
        return decode(rounded);
    }

    auto LpModel::satisfied_by(const vector<Rational> & values) const -> bool
    {
        for (auto & c : _constraints) {
            Rational lhs = 0;
            for (auto & t : c.terms)
                lhs += values.at(t.var) * t.coefficient;
            bool ok = false;
            switch (c.sense) {
                case Sense::LessEqual:    ok = lhs <= c.rhs; break;
                case Sense::GreaterEqual: ok = lhs >= c.rhs; break;
                case Sense::Equal:        ok = lhs == c.rhs; break;
            }
            if (! ok)
                return false;
        }
        return true;
    }

    auto LpModel::objective_value(const vector<Rational> & values) const -> Rational
    {
        Rational result = 0;
        for (int i = 0 ; i < variable_count() ; ++i)
            if (_objective[i] != 0)
                result += _objective[i] * values.at(i);
        return result;
    }

    auto LpModel::encode(const vector<int> & positions) const -> vector<int>
    {
        vector<int> values(variable_count(), 0);
        for (int v = 0 ; v < vertex_count() ; ++v)
            for (int i = 0 ; i <= positions.at(v) ; ++i)
                values[threshold(v, i)] = 1;
        return values;
    }

    namespace
    {
        auto format_coefficient(const Rational & r) -> string
        {
            if (r.get_den() == 1)
                return r.get_num().get_str();
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", r.get_d());
            return buf;
        }
    }

    auto write_lp_format(ostream & out, const LpModel & model) -> void
    {
        out << "\\ minhom threshold model\n";
        out << "Minimize\n obj:";
        bool any = false;
        for (int i = 0 ; i < model.variable_count() ; ++i) {
            auto & c = model.objective()[i];
            if (c == 0)
                continue;
            out << (sgn(c) < 0 ? " - " : (any ? " + " : " ")) << format_coefficient(abs(c)) << " " << model.variable_name(i);
            any = true;
        }
        if (! any)
            out << " 0 " << model.variable_name(0);
        out << "\nSubject To\n";

        map<string, long> index;
        for (auto & c : model.constraints()) {
            out << " " << c.family << "_" << index[c.family]++ << ":";
            if (c.terms.empty())
                out << " 0 " << model.variable_name(0);
            bool first = true;
            for (auto & t : c.terms) {
                long a = t.coefficient;
                out << (a < 0 ? " - " : (first ? " " : " + "));
                if (std::labs(a) != 1)
                    out << std::labs(a) << " ";
                out << model.variable_name(t.var);
                first = false;
            }
            switch (c.sense) {
                case Sense::LessEqual:    out << " <= "; break;
                case Sense::GreaterEqual: out << " >= "; break;
                case Sense::Equal:        out << " = "; break;
            }
            out << c.rhs << "\n";
        }

        out << "Bounds\n";
        for (int i = 0 ; i < model.variable_count() ; ++i)
            out << " 0 <= " << model.variable_name(i) << " <= 1\n";
        out << "Generals\n";
        for (int i = 0 ; i < model.variable_count() ; ++i)
            out << " " << model.variable_name(i) << "\n";
        out << "End\n";
    }
}

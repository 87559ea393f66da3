/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/lp_solve.hh>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

using std::map;
using std::optional;
using std::pair;
using std::vector;

namespace minhom
{
    namespace
    {
        // Presolved problem: min c.x + offset subject to g_r . x >= h_r. Rows
        // 2j and 2j + 1 are the bounds x_j >= 0 and -x_j >= -1.
        struct Reduced
        {
            int columns = 0;
            vector<int> column_of;
            vector<Rational> fixed_value;
            vector<Rational> cost;
            Rational offset;
            vector<vector<pair<int, long> > > rows;
            vector<Rational> rhs;
            vector<char> local;         // every column of the row belongs to one source vertex
            bool infeasible = false;
        };

        struct UnionFind
        {
            vector<int> parent;
            vector<optional<Rational> > value;

            explicit UnionFind(int n) : parent(n), value(n)
            {
                std::iota(parent.begin(), parent.end(), 0);
            }

            auto find(int x) -> int
            {
                while (parent[x] != x)
                    x = parent[x] = parent[parent[x]];
                return x;
            }
        };

        auto substitute(UnionFind & uf, const LpConstraint & c, map<int, long> & terms) -> Rational
        {
            terms.clear();
            Rational rhs = c.rhs;
            for (auto & t : c.terms) {
                int r = uf.find(t.var);
                if (uf.value[r])
                    rhs -= *uf.value[r] * t.coefficient;
                else
                    terms[r] += t.coefficient;
            }
            std::erase_if(terms, [] (const auto & kv) { return kv.second == 0; });
            return rhs;
        }

        auto presolve(const LpModel & model) -> Reduced
        {
            Reduced red;
            int nv = model.variable_count();
            UnionFind uf(nv);
            auto & cons = model.constraints();
            vector<char> eliminated(cons.size(), 0);
            map<int, long> terms;

            bool changed = true;
            while (changed && ! red.infeasible) {
                changed = false;
                for (unsigned k = 0 ; k < cons.size() ; ++k) {
                    if (eliminated[k] || cons[k].sense != Sense::Equal)
                        continue;
                    Rational rhs = substitute(uf, cons[k], terms);
                    if (terms.empty()) {
                        if (rhs != 0)
                            red.infeasible = true;
                        eliminated[k] = 1;
                    }
                    else if (terms.size() == 1) {
                        auto [r, a] = *terms.begin();
                        Rational v = rhs / a;
                        if (v < 0 || v > 1)
                            red.infeasible = true;
                        uf.value[r] = v;
                        eliminated[k] = 1;
                        changed = true;
                    }
                    else if (terms.size() == 2 && rhs == 0 && terms.begin()->second == -std::next(terms.begin())->second) {
                        int r1 = terms.begin()->first, r2 = std::next(terms.begin())->first;
                        uf.parent[std::max(r1, r2)] = std::min(r1, r2);
                        eliminated[k] = 1;
                        changed = true;
                    }
                }
            }

            red.column_of.assign(nv, -1);
            red.fixed_value.assign(nv, 0);
            vector<int> column_of_root(nv, -1), column_vertex;
            for (int v = 0 ; v < nv ; ++v) {
                int r = uf.find(v);
                if (uf.value[r])
                    red.fixed_value[v] = *uf.value[r];
                else {
                    if (column_of_root[r] == -1) {
                        column_of_root[r] = red.columns++;
                        column_vertex.push_back(model.variable(r).vertex);
                    }
                    red.column_of[v] = column_of_root[r];
                }
            }

            red.cost.assign(red.columns, 0);
            for (int v = 0 ; v < nv ; ++v) {
                auto & c = model.objective()[v];
                if (c == 0)
                    continue;
                if (red.column_of[v] == -1)
                    red.offset += c * red.fixed_value[v];
                else
                    red.cost[red.column_of[v]] += c;
            }

            for (int j = 0 ; j < red.columns ; ++j) {
                red.rows.push_back({ { j, 1 } });
                red.rhs.push_back(0);
                red.rows.push_back({ { j, -1 } });
                red.rhs.push_back(-1);
                red.local.push_back(1);
                red.local.push_back(1);
            }

            map<vector<pair<int, long> >, int> seen;
            auto add_row = [&] (vector<pair<int, long> > row, Rational h) {
                if (row.empty()) {
                    if (h > 0)
                        red.infeasible = true;
                    return;
                }
                long low = 0, high = 0;
                for (auto & [j, a] : row)
                    (a < 0 ? low : high) += a;
                if (low >= h)
                    return;
                if (high < h) {
                    red.infeasible = true;
                    return;
                }
                auto it = seen.find(row);
                if (it != seen.end()) {
                    if (h > red.rhs[it->second])
                        red.rhs[it->second] = h;
                    return;
                }
                seen.emplace(row, int(red.rows.size()));
                bool local = std::all_of(row.begin(), row.end(),
                        [&] (auto & t) { return column_vertex[t.first] == column_vertex[row.front().first]; });
                red.local.push_back(local);
                red.rows.push_back(std::move(row));
                red.rhs.push_back(h);
            };

            for (unsigned k = 0 ; k < cons.size() && ! red.infeasible ; ++k) {
                if (eliminated[k])
                    continue;
                Rational rhs = substitute(uf, cons[k], terms);
                vector<pair<int, long> > row;
                for (auto & [r, a] : terms)
                    row.emplace_back(column_of_root[r], a);
                std::sort(row.begin(), row.end());
                auto negated = row;
                for (auto & t : negated)
                    t.second = -t.second;
                switch (cons[k].sense) {
                    case Sense::GreaterEqual: add_row(row, rhs); break;
                    case Sense::LessEqual:    add_row(negated, -rhs); break;
                    case Sense::Equal:        add_row(row, rhs); add_row(negated, -rhs); break;
                }
            }

            return red;
        }

        auto positive(double x, double tol) -> bool { return x > tol; }
        auto positive(const Rational & x, double) -> bool { return sgn(x) > 0; }
        auto is_zero(double x, double tol) -> bool { return std::fabs(x) <= tol; }
        auto is_zero(const Rational & x, double) -> bool { return sgn(x) == 0; }
        auto magnitude(double x) -> double { return std::fabs(x); }
        auto magnitude(const Rational & x) -> double { return std::fabs(x.get_d()); }

        template <typename T_> auto convert(const Rational & r) -> T_;
        template <> auto convert<double>(const Rational & r) -> double { return r.get_d(); }
        template <> auto convert<Rational>(const Rational & r) -> Rational { return r; }

        enum class EngineStatus { Optimal, Unbounded };

        // Revised simplex on the dual: max h.y subject to G^T y = c, y >= 0.
        // A basis is n rows of G; its multipliers are the primal point.
        template <typename T_>
        class Engine
        {
            public:
                static constexpr bool floating = std::is_same_v<T_, double>;

                const Reduced & red;
                int n, m;
                vector<T_> h, c;
                vector<int> basis;
                vector<char> in_basis;
                vector<T_> binv, y, pi;
                long iterations = 0;
                int since_refactor = 0;
                double tol_price = 1e-9, tol_pivot = 1e-9;
                int price_start = 0;
                bool local_only = false;
                vector<int> nonzero;

                Engine(const Reduced & r, const vector<T_> & costs) :
                    red(r), n(r.columns), m(int(r.rows.size())), c(costs)
                {
                    for (auto & v : r.rhs)
                        h.push_back(convert<T_>(v));
                    basis.assign(n, -1);
                    in_basis.assign(m, 0);
                    binv.assign(std::size_t(n) * n, T_(0));
                    y.assign(n, T_(0));
                    pi.assign(n, T_(0));
                    for (int j = 0 ; j < n ; ++j) {
                        bool lower = ! positive(T_(-c[j]), 0.0);
                        basis[j] = lower ? 2 * j : 2 * j + 1;
                        in_basis[basis[j]] = 1;
                        binv[std::size_t(j) * n + j] = lower ? T_(1) : T_(-1);
                        y[j] = lower ? c[j] : T_(-c[j]);
                    }
                    recompute_pi();
                }

                auto coefficient_dot(int row, const vector<T_> & v) const -> T_
                {
                    T_ s = 0;
                    for (auto & [j, a] : red.rows[row])
                        s += v[j] * T_(a);
                    return s;
                }

                auto recompute_pi() -> void
                {
                    std::fill(pi.begin(), pi.end(), T_(0));
                    for (int i = 0 ; i < n ; ++i) {
                        const T_ & hb = h[basis[i]];
                        if (is_zero(hb, 0.0))
                            continue;
                        const T_ * row = &binv[std::size_t(i) * n];
                        for (int j = 0 ; j < n ; ++j)
                            pi[j] += hb * row[j];
                    }
                }

                // Gauss-Jordan inverse of the basis matrix; false if singular.
                auto refactor() -> bool
                {
                    vector<T_> a(std::size_t(n) * n, T_(0)), inv(std::size_t(n) * n, T_(0));
                    for (int i = 0 ; i < n ; ++i)
                        for (auto & [j, v] : red.rows[basis[i]])
                            a[std::size_t(j) * n + i] = T_(v);
                    for (int i = 0 ; i < n ; ++i)
                        inv[std::size_t(i) * n + i] = T_(1);

                    for (int col = 0 ; col < n ; ++col) {
                        int best = -1;
                        double best_mag = 0;
                        for (int r = col ; r < n ; ++r) {
                            double mag = magnitude(a[std::size_t(r) * n + col]);
                            if (mag > best_mag + (floating ? 1e-12 : 0.0)) {
                                best = r;
                                best_mag = mag;
                                if (! floating)
                                    break;
                            }
                        }
                        if (best == -1)
                            return false;
                        if (best != col)
                            for (int k = 0 ; k < n ; ++k) {
                                std::swap(a[std::size_t(best) * n + k], a[std::size_t(col) * n + k]);
                                std::swap(inv[std::size_t(best) * n + k], inv[std::size_t(col) * n + k]);
                            }
                        T_ piv = a[std::size_t(col) * n + col];
                        for (int k = 0 ; k < n ; ++k) {
                            a[std::size_t(col) * n + k] /= piv;
                            inv[std::size_t(col) * n + k] /= piv;
                        }
                        for (int r = 0 ; r < n ; ++r) {
                            if (r == col)
                                continue;
                            T_ f = a[std::size_t(r) * n + col];
                            if (is_zero(f, 0.0))
                                continue;
                            for (int k = 0 ; k < n ; ++k) {
                                if (! is_zero(a[std::size_t(col) * n + k], 0.0))
                                    a[std::size_t(r) * n + k] -= f * a[std::size_t(col) * n + k];
                                if (! is_zero(inv[std::size_t(col) * n + k], 0.0))
                                    inv[std::size_t(r) * n + k] -= f * inv[std::size_t(col) * n + k];
                            }
                        }
                    }

                    // inv is (B)^-1 with B[j][i] = g_{basis[i]}[j]
                    binv = std::move(inv);
                    for (int i = 0 ; i < n ; ++i) {
                        T_ s = 0;
                        const T_ * row = &binv[std::size_t(i) * n];
                        for (int j = 0 ; j < n ; ++j)
                            if (! is_zero(c[j], 0.0))
                                s += row[j] * c[j];
                        if constexpr (floating)
                            if (s < 0 && s > -1e-9)
                                s = 0;
                        y[i] = s;
                    }
                    recompute_pi();
                    since_refactor = 0;
                    return true;
                }

                auto load_basis(const vector<int> & rows) -> bool
                {
                    auto saved_basis = basis;
                    auto saved_binv = binv;
                    auto saved_y = y;
                    basis = rows;
                    if (refactor()) {
                        bool ok = true;
                        for (auto & v : y)
                            if (positive(T_(-v), 0.0))
                                ok = false;
                        if (ok) {
                            std::fill(in_basis.begin(), in_basis.end(), 0);
                            for (int r : basis)
                                in_basis[r] = 1;
                            return true;
                        }
                    }
                    basis = std::move(saved_basis);
                    binv = std::move(saved_binv);
                    y = std::move(saved_y);
                    recompute_pi();
                    return false;
                }

                auto set_rhs(int row, const T_ & value) -> void
                {
                    T_ delta = value - h[row];
                    h[row] = value;
                    if (! in_basis[row])
                        return;
                    int i = int(std::find(basis.begin(), basis.end(), row) - basis.begin());
                    const T_ * br = &binv[std::size_t(i) * n];
                    for (int j = 0 ; j < n ; ++j)
                        pi[j] += delta * br[j];
                }

                auto reduced_cost(int r) const -> T_
                {
                    return h[r] - coefficient_dot(r, pi);
                }

                auto price(bool bland) -> int
                {
                    if (bland) {
                        for (int r = 0 ; r < m ; ++r)
                            if (! in_basis[r] && (red.local[r] || ! local_only) && positive(reduced_cost(r), tol_price))
                                return r;
                        return -1;
                    }

                    int block = std::max(2000, m / 8);
                    int best = -1;
                    T_ best_value = 0;
                    for (int scanned = 0 ; scanned < m ; ) {
                        int end = std::min(scanned + block, m);
                        for (int s = scanned ; s < end ; ++s) {
                            int r = (price_start + s) % m;
                            if (in_basis[r] || (local_only && ! red.local[r]))
                                continue;
                            T_ d = reduced_cost(r);
                            if (positive(d, tol_price) && (best == -1 || d > best_value)) {
                                best = r;
                                best_value = d;
                            }
                        }
                        scanned = end;
                        if (best != -1) {
                            price_start = (price_start + scanned) % m;
                            break;
                        }
                    }
                    return best;
                }

                auto run(long iteration_limit) -> EngineStatus
                {
                    int degenerate = 0;
                    bool bland = false;
                    while (true) {
                        if (floating && since_refactor >= 100)
                            refactor();

                        int q = price(bland);
                        if (q == -1) {
                            if (floating && since_refactor > 0) {
                                refactor();
                                q = price(bland);
                            }
                            if (q == -1)
                                return EngineStatus::Optimal;
                        }

                        if (++iterations > iteration_limit)
                            throw MinHomError(ErrorKind::Internal, "simplex iteration limit reached");

                        vector<T_> w(n, T_(0));
                        for (int i = 0 ; i < n ; ++i) {
                            const T_ * row = &binv[std::size_t(i) * n];
                            T_ s = 0;
                            for (auto & [j, a] : red.rows[q])
                                s += row[j] * T_(a);
                            w[i] = s;
                        }

                        int leave = -1;
                        T_ theta = 0;
                        for (int i = 0 ; i < n ; ++i) {
                            if (! positive(w[i], tol_pivot))
                                continue;
                            T_ ratio = y[i] / w[i];
                            if (leave == -1)
                                leave = i, theta = ratio;
                            else {
                                T_ diff = ratio - theta;
                                if (positive(T_(-diff), floating ? 1e-12 : 0.0)
                                        || (is_zero(diff, floating ? 1e-12 : 0.0) && basis[i] < basis[leave]))
                                    leave = i, theta = ratio;
                            }
                        }
                        if (leave == -1)
                            return EngineStatus::Unbounded;
                        if constexpr (floating)
                            if (theta < 0)
                                theta = 0;

                        if (is_zero(theta, 1e-12)) {
                            if (++degenerate > 50)
                                bland = true;
                        }
                        else {
                            degenerate = 0;
                            bland = false;
                        }

                        T_ dq = reduced_cost(q);
                        for (int i = 0 ; i < n ; ++i) {
                            if (i == leave || is_zero(w[i], 0.0))
                                continue;
                            y[i] -= theta * w[i];
                            if constexpr (floating)
                                if (y[i] < 0)
                                    y[i] = 0;
                        }
                        y[leave] = theta;

                        T_ * lrow = &binv[std::size_t(leave) * n];
                        T_ wl = w[leave];
                        nonzero.clear();
                        for (int j = 0 ; j < n ; ++j)
                            if (! is_zero(lrow[j], 0.0)) {
                                lrow[j] /= wl;
                                nonzero.push_back(j);
                            }
                        for (int i = 0 ; i < n ; ++i) {
                            if (i == leave || is_zero(w[i], 0.0))
                                continue;
                            T_ * row = &binv[std::size_t(i) * n];
                            T_ f = w[i];
                            for (int j : nonzero)
                                row[j] -= f * lrow[j];
                        }
                        for (int j : nonzero)
                            pi[j] += dq * lrow[j];

                        in_basis[basis[leave]] = 0;
                        basis[leave] = q;
                        in_basis[q] = 1;
                        ++since_refactor;
                    }
                }

                auto iteration_limit() const -> long
                {
                    return 200L * (n + m) + 10000;
                }

                // Optimal basis for the rows of single source vertices first,
                // then the coupling rows from there.
                auto run_crashed() -> EngineStatus
                {
                    local_only = true;
                    auto status = run(iteration_limit());
                    local_only = false;
                    if (status == EngineStatus::Unbounded)
                        return status;
                    return run(iteration_limit());
                }
        };

        auto normalised_costs(const Reduced & red) -> pair<vector<double>, double>
        {
            double scale = 0;
            for (auto & c : red.cost)
                scale = std::max(scale, std::fabs(c.get_d()));
            if (scale == 0)
                scale = 1;
            vector<double> result;
            for (auto & c : red.cost)
                result.push_back(c.get_d() / scale);
            return { result, scale };
        }

        auto raw_values(const LpModel & model, const Reduced & red, const vector<double> & x) -> vector<double>
        {
            vector<double> values(model.variable_count());
            for (int v = 0 ; v < model.variable_count() ; ++v)
                values[v] = red.column_of[v] == -1 ? red.fixed_value[v].get_d() : x[red.column_of[v]];
            return values;
        }

        auto raw_values(const LpModel & model, const Reduced & red, const vector<Rational> & x) -> vector<Rational>
        {
            vector<Rational> values(model.variable_count());
            for (int v = 0 ; v < model.variable_count() ; ++v)
                values[v] = red.column_of[v] == -1 ? red.fixed_value[v] : x[red.column_of[v]];
            return values;
        }

        // Clamp to [0, 1], make thresholds non-increasing, snap near-integers.
        auto repair(const LpModel & model, vector<double> & values) -> double
        {
            double worst = 0;
            for (int v = 0 ; v < model.vertex_count() ; ++v) {
                double previous = 1.0;
                for (int i = 0 ; i <= int(model.domain(v).size()) ; ++i) {
                    double & x = values[model.threshold(v, i)];
                    double fixed = std::clamp(x, 0.0, previous);
                    if (std::fabs(fixed) < feasibility_tolerance)
                        fixed = 0;
                    if (std::fabs(fixed - 1) < feasibility_tolerance)
                        fixed = 1;
                    worst = std::max(worst, std::fabs(fixed - x));
                    x = fixed;
                    previous = x;
                }
            }
            return worst;
        }

        auto objective_of(const LpModel & model, const vector<double> & values) -> double
        {
            double total = 0;
            for (int v = 0 ; v < model.variable_count() ; ++v)
                if (model.objective()[v] != 0)
                    total += model.objective()[v].get_d() * values[v];
            return total;
        }

        // Exact optimality check of a rational point and dual multipliers.
        auto certify(const Reduced & red, const vector<Rational> & x, const vector<int> & basis,
                const vector<Rational> & y) -> bool
        {
            for (unsigned r = 0 ; r < red.rows.size() ; ++r) {
                Rational s = 0;
                for (auto & [j, a] : red.rows[r])
                    s += x[j] * a;
                if (s < red.rhs[r])
                    return false;
            }
            vector<Rational> combination(red.columns, 0);
            Rational dual = 0;
            for (unsigned i = 0 ; i < basis.size() ; ++i) {
                if (sgn(y[i]) < 0)
                    return false;
                if (sgn(y[i]) == 0)
                    continue;
                for (auto & [j, a] : red.rows[basis[i]])
                    combination[j] += y[i] * a;
                dual += y[i] * red.rhs[basis[i]];
            }
            if (combination != red.cost)
                return false;
            Rational primal = 0;
            for (int j = 0 ; j < red.columns ; ++j)
                primal += red.cost[j] * x[j];
            return primal == dual;
        }

        auto exact_solve(const Reduced & red, const vector<int> * warm) -> optional<vector<Rational> >
        {
            Engine<Rational> engine(red, red.cost);
            if (warm)
                engine.load_basis(*warm);
            if ((warm ? engine.run(engine.iteration_limit()) : engine.run_crashed()) == EngineStatus::Unbounded)
                return std::nullopt;
            return engine.pi;
        }
    }

    auto solve(const LpModel & model, SolveMode mode) -> FracSolution
    {
        FracSolution result;
        auto red = presolve(model);
        if (red.infeasible) {
            result.status = LpStatus::Infeasible;
            return result;
        }

        auto [costs, scale] = normalised_costs(red);
        Engine<double> engine(red, costs);
        auto status = engine.run_crashed();
        result.iterations = engine.iterations;

        if (mode == SolveMode::Float) {
            if (status == EngineStatus::Unbounded) {
                result.status = LpStatus::Infeasible;
                return result;
            }
            result.values = raw_values(model, red, engine.pi);
            result.repaired = repair(model, result.values);
            result.objective = objective_of(model, result.values);
            return result;
        }

        optional<vector<Rational> > exact;
        if (status == EngineStatus::Optimal) {
            vector<Rational> x(red.columns), y(red.columns);
            for (int j = 0 ; j < red.columns ; ++j)
                x[j] = rationalize(engine.pi[j], 10000000);
            for (int i = 0 ; i < red.columns ; ++i)
                y[i] = rationalize(engine.y[i] * scale, 10000000);
            if (certify(red, x, engine.basis, y)) {
                exact = x;
                result.certified = true;
            }
            else
                exact = exact_solve(red, &engine.basis);
        }
        else
            exact = exact_solve(red, nullptr);

        if (! exact) {
            result.status = LpStatus::Infeasible;
            return result;
        }

        auto values = raw_values(model, red, *exact);
        result.exact_objective = model.objective_value(values);
        for (auto & v : values)
            result.values.push_back(v.get_d());
        result.objective = result.exact_objective->get_d();
        result.exact_values = std::move(values);
        return result;
    }

    namespace
    {
        template <typename T_>
        struct BranchAndBound
        {
            const LpModel & model;
            const Reduced & red;
            Engine<T_> & engine;
            long node_limit;
            long nodes = 0;
            optional<Rational> incumbent;
            vector<int> best_values;

            auto fractionality(const T_ & v) const -> double
            {
                double d;
                if constexpr (std::is_same_v<T_, double>)
                    d = v;
                else
                    d = v.get_d();
                return std::min(std::fabs(d), std::fabs(1 - d));
            }

            auto integral(const T_ & v) const -> bool
            {
                if constexpr (std::is_same_v<T_, double>)
                    return fractionality(v) <= feasibility_tolerance;
                else
                    return v == 0 || v == 1;
            }

            auto bound_value() const -> Rational
            {
                if constexpr (std::is_same_v<T_, double>) {
                    double s = 0;
                    for (int j = 0 ; j < red.columns ; ++j)
                        s += red.cost[j].get_d() * engine.pi[j];
                    return Rational(s) + red.offset;
                }
                else {
                    Rational s = red.offset;
                    for (int j = 0 ; j < red.columns ; ++j)
                        s += red.cost[j] * engine.pi[j];
                    return s;
                }
            }

            auto explore() -> void
            {
                if (++nodes > node_limit)
                    throw MinHomError(ErrorKind::SizeLimit, "branch and bound node limit reached");

                if (engine.run(engine.iteration_limit()) == EngineStatus::Unbounded)
                    return;

                Rational bound = bound_value();
                if (incumbent) {
                    Rational slack = std::is_same_v<T_, double> ? Rational(1e-9 * std::max(1.0, std::fabs(incumbent->get_d()))) : Rational(0);
                    if (bound >= *incumbent - slack)
                        return;
                }

                int branch = -1;
                double most = 0;
                for (int j = 0 ; j < red.columns ; ++j) {
                    if (integral(engine.pi[j]))
                        continue;
                    double f = fractionality(engine.pi[j]);
                    if (branch == -1 || f > most + 1e-12) {
                        branch = j;
                        most = f;
                    }
                }

                if (branch == -1) {
                    vector<int> values(model.variable_count());
                    vector<Rational> exact(model.variable_count());
                    for (int v = 0 ; v < model.variable_count() ; ++v) {
                        Rational x;
                        if (red.column_of[v] == -1)
                            x = red.fixed_value[v];
                        else {
                            if constexpr (std::is_same_v<T_, double>)
                                x = engine.pi[red.column_of[v]] > 0.5 ? 1 : 0;
                            else
                                x = engine.pi[red.column_of[v]];
                        }
                        values[v] = x == 1 ? 1 : 0;
                        exact[v] = x;
                    }
                    if (! model.satisfied_by(exact))
                        throw MinHomError(ErrorKind::Internal, "rounded integral point violates the model");
                    Rational obj = model.objective_value(exact);
                    if (! incumbent || obj < *incumbent) {
                        incumbent = obj;
                        best_values = std::move(values);
                    }
                    return;
                }

                bool up_first;
                if constexpr (std::is_same_v<T_, double>)
                    up_first = engine.pi[branch] >= 0.5;
                else
                    up_first = engine.pi[branch] >= Rational(1, 2);

                for (int side = 0 ; side < 2 ; ++side) {
                    bool up = (side == 0) == up_first;
                    int row = up ? 2 * branch : 2 * branch + 1;
                    T_ old = engine.h[row];
                    engine.set_rhs(row, up ? T_(1) : T_(0));
                    explore();
                    engine.set_rhs(row, old);
                }
            }
        };

        template <typename T_>
        auto run_branch_and_bound(const LpModel & model, const Reduced & red, const vector<T_> & costs,
                long limit, IntegerSolution & result) -> void
        {
            Engine<T_> engine(red, costs);
            engine.run_crashed();
            BranchAndBound<T_> bb{ model, red, engine, limit, 0, {}, {} };
            bb.explore();
            result.nodes = bb.nodes;
            if (bb.incumbent) {
                result.status = LpStatus::Optimal;
                result.objective = *bb.incumbent;
                result.values = std::move(bb.best_values);
                result.map = model.decode(result.values);
            }
        }
    }

    auto solve_integer(const LpModel & model, const IntegerOptions & options) -> IntegerSolution
    {
        IntegerSolution result;
        auto red = presolve(model);
        if (red.infeasible)
            return result;

        if (options.mode == SolveMode::Float)
            run_branch_and_bound<double>(model, red, normalised_costs(red).first, options.node_limit, result);
        else
            run_branch_and_bound<Rational>(model, red, red.cost, options.node_limit, result);
        return result;
    }

    auto max_violation(const LpModel & model, const vector<double> & values) -> double
    {
        double worst = 0;
        for (auto & c : model.constraints()) {
            double lhs = 0;
            for (auto & t : c.terms)
                lhs += values.at(t.var) * double(t.coefficient);
            double v = 0;
            switch (c.sense) {
                case Sense::LessEqual:    v = lhs - c.rhs; break;
                case Sense::GreaterEqual: v = c.rhs - lhs; break;
                case Sense::Equal:        v = std::fabs(lhs - c.rhs); break;
            }
            worst = std::max(worst, v);
        }
        return worst;
    }
}

/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/approx.hh>

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

using std::deque;
using std::pair;
using std::set;
using std::vector;

namespace minhom
{
    auto make_repair_problem(const Digraph & source, const Completion & comp, const LpModel & model,
            const vector<VertexMask> & lists, const FracSolution & frac) -> RepairProblem
    {
        if (frac.status != LpStatus::Optimal)
            throw MinHomError(ErrorKind::Infeasible, "no fractional point to round");
        RepairProblem prob{ &source, &comp, model.domains(), lists, {} };
        for (int v = 0 ; v < model.vertex_count() ; ++v) {
            vector<double> t;
            for (int i = 0 ; i <= int(model.domain(v).size()) ; ++i)
                t.push_back(frac.values.at(model.threshold(v, i)));
            prob.thresholds.push_back(std::move(t));
        }
        return prob;
    }

    auto RoundingState::image(const RepairProblem & prob) const -> vector<int>
    {
        vector<int> result(position.size());
        for (unsigned v = 0 ; v < position.size() ; ++v)
            result[v] = prob.domains[v][position[v]];
        return result;
    }

    auto RoundingState::rounded(int v, int i) const -> int
    {
        return i <= position.at(v) ? 1 : 0;
    }

    auto round_threshold(const RepairProblem & prob, double x) -> RoundingState
    {
        RoundingState state;
        int n = int(prob.domains.size());
        state.position.assign(n, -1);
        for (int v = 0 ; v < n ; ++v) {
            auto & dom = prob.domains[v];
            for (int i = int(dom.size()) - 1 ; i >= 0 ; --i)
                if (has_bit(prob.lists[v], dom[i]) && prob.thresholds[v][i] >= x - rounding_tolerance) {
                    state.position[v] = i;
                    break;
                }
            if (state.position[v] == -1)
                throw MinHomError(ErrorKind::Internal, "rounding left a vertex unmapped");
        }
        return state;
    }

    namespace
    {
        struct Shifter
        {
            const RepairProblem & prob;
            RoundingState & state;
            const YDraw & y;
            YWindow * window;
            const Digraph & d;
            const Completion & comp;

            deque<int> queue;
            vector<char> queued;
            set<pair<int, int> > deferred;

            Shifter(const RepairProblem & p, RoundingState & s, const YDraw & yd, YWindow * w) :
                prob(p), state(s), y(yd), window(w), d(*p.source), comp(*p.completion), queued(d.size(), 0)
            {
            }

            auto img(int v) const -> int
            {
                return prob.domains[v][state.position[v]];
            }

            auto arc_ok(int a, int b) const -> bool
            {
                return has_bit(comp.out_base[a], b);
            }

            auto push(int v) -> void
            {
                if (! queued[v]) {
                    queued[v] = 1;
                    queue.push_back(v);
                }
            }

            auto choose(int v, const vector<int> & candidates) -> int
            {
                auto & t = prob.thresholds[v];
                int k = int(candidates.size());
                vector<double> weight(k);
                double total = 0;
                for (int q = 0 ; q < k ; ++q) {
                    weight[q] = std::max(0.0, t[candidates[q]] - t[candidates[q] + 1]);
                    total += weight[q];
                }
                if (total <= rounding_tolerance) {
                    std::fill(weight.begin(), weight.end(), 1.0);
                    total = k;
                }

                double cumulative = 0;
                for (int q = 0 ; q < k ; ++q) {
                    cumulative += weight[q];
                    double s = q == k - 1 ? 1.0 : cumulative / total;
                    bool take = y.just_above ? y.value < s : y.value <= s;
                    if (take) {
                        if (window && y.just_above)
                            window->upper = std::min(window->upper, s);
                        return candidates[q];
                    }
                }
                return candidates.back();
            }

            auto move(int v, int to) -> void
            {
                int from = img(v);
                state.position[v] = to;
                state.trace.push_back(ShiftStep{ v, from, img(v) });
                ++state.shifts;
                deferred.clear();
                for (int u : d.in_neighbours(v))
                    if (u != v && ! arc_ok(img(u), img(v)))
                        push(u);
                for (int z : d.out_neighbours(v))
                    if (z != v && ! arc_ok(img(v), img(z)))
                        push(z);
            }

            auto defer(int other, int from, int to) -> void
            {
                if (! deferred.emplace(from, to).second)
                    throw MinHomError(ErrorKind::EmptyCandidates, "no candidate on either side of arc ("
                            + std::to_string(from) + ", " + std::to_string(to) + ")");
                ++state.deferrals;
                push(other);
            }

            auto process(int v) -> void
            {
                auto & dom = prob.domains[v];
                for (int u : d.in_neighbours(v)) {
                    if (u == v || arc_ok(img(u), img(v)))
                        continue;
                    vector<int> candidates;
                    for (int t = 0 ; t < state.position[v] ; ++t)
                        if (has_bit(prob.lists[v], dom[t]) && arc_ok(img(u), dom[t]))
                            candidates.push_back(t);
                    if (candidates.empty())
                        defer(u, u, v);
                    else
                        move(v, choose(v, candidates));
                }
                for (int z : d.out_neighbours(v)) {
                    if (z == v || arc_ok(img(v), img(z)))
                        continue;
                    vector<int> candidates;
                    for (int t = 0 ; t < state.position[v] ; ++t)
                        if (has_bit(prob.lists[v], dom[t]) && arc_ok(dom[t], img(z)))
                            candidates.push_back(t);
                    if (candidates.empty())
                        defer(z, v, z);
                    else
                        move(v, choose(v, candidates));
                }
            }

            auto run(int start) -> void
            {
                push(start);
                while (! queue.empty()) {
                    int v = queue.front();
                    queue.pop_front();
                    queued[v] = 0;
                    process(v);
                }
            }
        };
    }

    auto shift(const RepairProblem & prob, RoundingState & state, int start, const YDraw & y, YWindow * window) -> void
    {
        Shifter(prob, state, y, window).run(start);
    }

    auto repair_rounding(const RepairProblem & prob, double x, const YDraw & y, YWindow * window) -> RoundingState
    {
        auto state = round_threshold(prob, x);
        auto & d = *prob.source;
        auto & comp = *prob.completion;

        auto img = [&] (int v) { return prob.domains[v][state.position[v]]; };

        for (auto & [u, v] : d.arcs())
            if (! has_bit(comp.out_all[img(u)], img(v)))
                throw MinHomError(ErrorKind::Internal, "rounded map leaves the completed target");

        long guard = 0, limit = 1;
        for (auto & dom : prob.domains)
            limit += long(dom.size());
        limit *= long(d.arc_count()) + 1;

        while (true) {
            const Arc * bad = nullptr;
            for (auto & arc : d.arcs())
                if (! has_bit(comp.out_base[img(arc.first)], img(arc.second))) {
                    bad = &arc;
                    break;
                }
            if (! bad)
                break;
            auto [u, v] = *bad;
            int a = img(u), b = img(v);
            if (! comp.in_added(a, b))
                throw MinHomError(ErrorKind::Internal, "arc left outside the completed target");
            if (! (comp.in_base[b] & comp.later[a]))
                shift(prob, state, v, y, window);
            else
                shift(prob, state, u, y, window);
            if (++guard > limit)
                throw MinHomError(ErrorKind::Internal, "repair did not terminate");
        }

        return state;
    }

    auto x_candidates(const RepairProblem & prob) -> vector<double>
    {
        vector<double> values;
        for (auto & t : prob.thresholds)
            for (double v : t)
                if (v > rounding_tolerance)
                    values.push_back(std::min(v, 1.0));
        std::sort(values.begin(), values.end(), std::greater<double>());

        vector<double> result;
        for (double v : values)
            if (result.empty() || result.back() - v > rounding_tolerance)
                result.push_back(v);
        if (! result.empty())
            result.push_back(result.back() / 2);
        else
            result.push_back(1.0);
        return result;
    }

    auto derandomize(const RepairProblem & prob, const ImageEvaluator & evaluate) -> Derandomized
    {
        Derandomized best;
        bool have = false;
        for (double x : x_candidates(prob)) {
            double y = 0;
            while (true) {
                YWindow window;
                auto state = repair_rounding(prob, x, YDraw{ y, true }, &window);
                auto image = state.image(prob);
                auto [map, cost] = evaluate(image);
                ++best.runs;
                if (! have || cost < best.cost) {
                    have = true;
                    best.image = image;
                    best.map = std::move(map);
                    best.cost = cost;
                    best.x = x;
                    best.y = y;
                }
                if (window.upper >= 1.0 || window.upper <= y)
                    break;
                y = window.upper;
            }
        }
        return best;
    }

    auto fold_biarc_image(const Digraph & g, const Digraph & h, const ListState & state, const Ordering & star,
            const vector<int> & image) -> Stage2Result
    {
        int n = g.size(), p = h.size();
        vector<int> alpha(n), beta(n);
        for (int u = 0 ; u < n ; ++u) {
            alpha[u] = image.at(u);
            beta[u] = image.at(n + u) - p;
        }

        Stage2Result result;
        result.map.assign(n, -1);
        vector<int> unstable;
        for (int u = 0 ; u < n ; ++u) {
            if (alpha[u] == beta[u])
                result.map[u] = alpha[u];
            else
                unstable.push_back(u);
        }
        result.unstable = long(unstable.size());
        std::stable_sort(unstable.begin(), unstable.end(), [&] (int a, int b) {
                return star.rank[alpha[a]] > star.rank[alpha[b]];
            });

        auto fits = [&] (int u, int value) {
            if (! has_bit(state.lists[u], value))
                return false;
            for (int w : g.out_neighbours(u))
                if (result.map[w] != -1 && ! h.has_arc(value, result.map[w]))
                    return false;
            return true;
        };

        // Alternate which copy is trusted along each component of unstable vertices.
        bool conflict = false;
        for (int start : unstable) {
            if (result.map[start] != -1 || conflict)
                continue;
            deque<pair<int, bool> > queue{ { start, true } };
            while (! queue.empty() && ! conflict) {
                auto [u, trust_alpha] = queue.front();
                queue.pop_front();
                if (result.map[u] != -1)
                    continue;
                int first = trust_alpha ? alpha[u] : beta[u], second = trust_alpha ? beta[u] : alpha[u];
                int chosen = fits(u, first) ? first : fits(u, second) ? second : -1;
                if (chosen == -1) {
                    conflict = true;
                    break;
                }
                result.map[u] = chosen;
                bool used_alpha = chosen == alpha[u];
                for (int w : g.out_neighbours(u))
                    if (result.map[w] == -1 && alpha[w] != beta[w])
                        queue.emplace_back(w, ! used_alpha);
            }
        }

        if (! conflict && is_valid_hom(g, h, result.map))
            return result;

        // Pair consistency plus a majority polymorphism lets any partial
        // assignment extend, so go vertex by vertex.
        result.fallback = true;
        auto preferred = result.map;
        result.map.assign(n, -1);
        for (int u = 0 ; u < n ; ++u) {
            vector<int> options;
            if (preferred[u] != -1)
                options.push_back(preferred[u]);
            options.push_back(alpha[u]);
            options.push_back(beta[u]);
            for (int a : star.perm)
                if (a < p)
                    options.push_back(a);
            int chosen = -1;
            for (int a : options) {
                if (! has_bit(state.lists[u], a))
                    continue;
                bool ok = true;
                for (int w = 0 ; w < u && ok ; ++w)
                    if (! state.pairs.contains(u, w, a, result.map[w]))
                        ok = false;
                if (ok) {
                    chosen = a;
                    break;
                }
            }
            if (chosen == -1)
                throw MinHomError(ErrorKind::Internal, "pair-consistent extension failed");
            result.map[u] = chosen;
        }
        if (! is_valid_hom(g, h, result.map))
            throw MinHomError(ErrorKind::Internal, "folded map is not a homomorphism");
        return result;
    }
}

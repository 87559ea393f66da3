/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_TESTS_HELPERS_HH
#define MINHOM_GUARD_TESTS_HELPERS_HH 1

#include <minhom/instance.hh>
#include <minhom/orderings.hh>

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

// Naive oracles that share nothing with the library beyond the Digraph and
// Instance containers.
namespace test
{
    using minhom::Digraph;
    using minhom::Instance;
    using minhom::Rational;

    inline auto random_digraph(int n, double p, std::mt19937_64 & rng, bool loops = false) -> Digraph
    {
        std::bernoulli_distribution coin(p);
        Digraph d(n);
        for (int x = 0 ; x < n ; ++x)
            for (int y = 0 ; y < n ; ++y)
                if ((loops || x != y) && coin(rng))
                    d.add_arc(x, y);
        return d;
    }

    inline auto random_graph(int n, double p, std::mt19937_64 & rng, bool loops = false) -> Digraph
    {
        std::bernoulli_distribution coin(p);
        Digraph d(n);
        for (int x = 0 ; x < n ; ++x)
            for (int y = loops ? x : x + 1 ; y < n ; ++y)
                if (coin(rng))
                    d.add_edge(x, y);
        return d;
    }

    inline auto random_costs(Instance & inst, std::mt19937_64 & rng, int hi = 20, double inf_prob = 0.0) -> void
    {
        std::uniform_int_distribution<int> price(0, hi);
        std::bernoulli_distribution blocked(inf_prob);
        for (int x = 0 ; x < inst.source().size() ; ++x)
            for (int a = 0 ; a < inst.target().size() ; ++a)
                inst.set_cost(x, a, blocked(rng) ? minhom::Cost::infinite() : minhom::Cost(long(price(rng))));
    }

    inline auto arc_in(const Digraph & h, int a, int b) -> bool
    {
        auto & arcs = h.arcs();
        return std::find(arcs.begin(), arcs.end(), minhom::Arc{ a, b }) != arcs.end();
    }

    // Every map V(D) -> V(H) with finite cost that preserves arcs.
    inline auto all_homs(const Instance & inst) -> std::vector<std::vector<int> >
    {
        int n = inst.source().size(), p = inst.target().size();
        std::vector<std::vector<int> > result;
        std::vector<int> f(n, 0);
        if (p == 0)
            return result;
        while (true) {
            bool ok = true;
            for (int x = 0 ; x < n && ok ; ++x)
                if (inst.cost(x, f[x]).is_infinite())
                    ok = false;
            for (auto & [x, y] : inst.source().arcs())
                if (ok && ! arc_in(inst.target(), f[x], f[y]))
                    ok = false;
            if (ok)
                result.push_back(f);
            int i = 0;
            while (i < n && ++f[i] == p)
                f[i++] = 0;
            if (i == n)
                break;
        }
        std::sort(result.begin(), result.end());
        return result;
    }

    inline auto cost_of(const Instance & inst, const std::vector<int> & f) -> Rational
    {
        Rational total = 0;
        for (int x = 0 ; x < int(f.size()) ; ++x)
            total += inst.cost(x, f[x]).value();
        return total;
    }

    inline auto oracle_min_cost(const Instance & inst) -> std::optional<Rational>
    {
        std::optional<Rational> best;
        for (auto & f : all_homs(inst)) {
            Rational c = cost_of(inst, f);
            if (! best || c < *best)
                best = c;
        }
        return best;
    }

    // Definition check: arcs uv, u'v' with u < u', v' < v force uv'.
    inline auto oracle_min_ordering(const Digraph & h, const std::vector<int> & perm) -> bool
    {
        std::vector<int> rank(perm.size());
        for (int i = 0 ; i < int(perm.size()) ; ++i)
            rank[perm[i]] = i;
        for (auto & [u, v] : h.arcs())
            for (auto & [u2, v2] : h.arcs())
                if (rank[u] < rank[u2] && rank[v2] < rank[v] && ! arc_in(h, u, v2))
                    return false;
        return true;
    }

    inline auto oracle_max_ordering(const Digraph & h, const std::vector<int> & perm) -> bool
    {
        std::vector<int> rank(perm.size());
        for (int i = 0 ; i < int(perm.size()) ; ++i)
            rank[perm[i]] = i;
        for (auto & [u, v] : h.arcs())
            for (auto & [u2, v2] : h.arcs())
                if (rank[u] < rank[u2] && rank[v2] < rank[v] && ! arc_in(h, u2, v))
                    return false;
        return true;
    }

    inline auto oracle_first_ordering(const Digraph & h, bool want_max) -> std::optional<std::vector<int> >
    {
        std::vector<int> perm(h.size());
        for (int i = 0 ; i < h.size() ; ++i)
            perm[i] = i;
        do {
            if (oracle_min_ordering(h, perm) && (! want_max || oracle_max_ordering(h, perm)))
                return perm;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return std::nullopt;
    }

    // A random digraph on p vertices that has a min ordering, or nullopt
    // after a few attempts.
    inline auto random_min_ordered(int p, double density, std::mt19937_64 & rng, int attempts = 200)
        -> std::optional<std::pair<Digraph, std::vector<int> > >
    {
        for (int t = 0 ; t < attempts ; ++t) {
            auto h = random_digraph(p, density, rng, true);
            if (h.arc_count() == 0)
                continue;
            if (auto perm = oracle_first_ordering(h, false))
                return std::pair{ h, *perm };
        }
        return std::nullopt;
    }

    // The digraph {0->2, 0->3, 1->2}: min ordered by identity, E' = {1->3}.
    inline auto small_target() -> Digraph
    {
        Digraph h(4);
        h.add_arc(0, 2);
        h.add_arc(0, 3);
        h.add_arc(1, 2);
        return h;
    }

    // Undirected edge with one loop: the vertex cover target.
    inline auto vertex_cover_target() -> Digraph
    {
        Digraph h(2);
        h.add_edge(1, 1);
        h.add_edge(0, 1);
        return h;
    }
}

#endif

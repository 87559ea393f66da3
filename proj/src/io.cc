/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/io.hh>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

using std::istream;
using std::optional;
using std::ostream;
using std::string;
using std::vector;

namespace minhom
{
    namespace
    {
        struct Reader
        {
            int line_number = 0;
            bool target_only;

            optional<int> p, n;
            vector<Arc> h_arcs, d_arcs;
            vector<std::tuple<int, int, Cost> > costs;
            optional<vector<int> > order, levels;
            bool symmetric = false;

            explicit Reader(bool t) : target_only(t)
            {
            }

            [[noreturn]] auto fail(const string & msg) const -> void
            {
                throw MinHomError(ErrorKind::ParseError, msg, line_number);
            }

            auto integer(std::istringstream & in, const char * what) -> long
            {
                string token;
                if (! (in >> token))
                    fail(string("missing ") + what);
                try {
                    std::size_t used = 0;
                    long v = std::stol(token, &used);
                    if (used != token.size())
                        fail(string("bad ") + what + " '" + token + "'");
                    return v;
                }
                catch (const std::logic_error &) {
                    fail(string("bad ") + what + " '" + token + "'");
                }
            }

            auto vertex(std::istringstream & in, const optional<int> & count, const char * what) -> int
            {
                long v = integer(in, what);
                if (v < 0 || v >= *count)
                    fail(string(what) + " " + std::to_string(v) + " out of range");
                return int(v);
            }

            auto no_more(std::istringstream & in) -> void
            {
                string extra;
                if (in >> extra)
                    fail("unexpected '" + extra + "'");
            }

            auto read_line(const string & raw) -> void
            {
                string text = raw.substr(0, raw.find('#'));
                std::istringstream in(text);
                string key;
                if (! (in >> key))
                    return;

                if (key == "h") {
                    if (p)
                        fail("repeated h line");
                    long v = integer(in, "target size");
                    if (v < 0)
                        fail("negative target size");
                    p = int(v);
                }
                else if (key == "ha") {
                    if (! p)
                        fail("ha before h");
                    int a = vertex(in, p, "target vertex");
                    int b = vertex(in, p, "target vertex");
                    h_arcs.emplace_back(a, b);
                }
                else if (key == "order" || key == "levels") {
                    if (! p)
                        fail(key + " before h");
                    vector<int> values;
                    for (int i = 0 ; i < *p ; ++i)
                        values.push_back(int(integer(in, "entry")));
                    (key == "order" ? order : levels) = values;
                }
                else if (key == "sym")
                    symmetric = true;
                else if (target_only && (key == "d" || key == "da" || key == "c"))
                    return;
                else if (key == "d") {
                    if (n)
                        fail("repeated d line");
                    long v = integer(in, "source size");
                    if (v < 0)
                        fail("negative source size");
                    n = int(v);
                }
                else if (key == "da") {
                    if (! n)
                        fail("da before d");
                    int x = vertex(in, n, "source vertex");
                    int y = vertex(in, n, "source vertex");
                    d_arcs.emplace_back(x, y);
                }
                else if (key == "c") {
                    if (! n || ! p)
                        fail("c before h and d");
                    int x = vertex(in, n, "source vertex");
                    int a = vertex(in, p, "target vertex");
                    string value;
                    if (! (in >> value))
                        fail("missing cost");
                    try {
                        costs.emplace_back(x, a, parse_cost(value));
                    }
                    catch (const std::exception &) {
                        fail("bad cost '" + value + "'");
                    }
                }
                else
                    fail("unknown keyword '" + key + "'");
                no_more(in);
            }

            auto finish() -> ParsedInstance
            {
                ++line_number;
                if (! p)
                    fail("missing h line");
                if (! target_only && ! n)
                    fail("missing d line");

                Digraph h(*p), d(target_only ? 0 : *n);
                for (auto & [a, b] : h_arcs)
                    symmetric ? h.add_edge(a, b) : void(h.add_arc(a, b));
                for (auto & [x, y] : d_arcs)
                    symmetric ? d.add_edge(x, y) : void(d.add_arc(x, y));

                if (h.size() > max_target_size)
                    throw MinHomError(ErrorKind::SizeLimit, "target has more than 64 vertices");
                CostTable table(d.size(), h.size());
                for (auto & [x, a, c] : costs)
                    table.set(x, a, c);

                optional<Ordering> ord;
                if (order) {
                    try {
                        ord = Ordering::from_permutation(*order);
                        if (levels) {
                            int k = 0;
                            for (int l : *levels)
                                k = std::max(k, l + 1);
                            ord = ord->with_levels(*levels, k);
                        }
                    }
                    catch (const MinHomError &) {
                        throw MinHomError(ErrorKind::BadOrder, "malformed order or levels line");
                    }
                    bool ok = levels ? verify_kmin_ordering(h, *ord) : verify_min_ordering(h, *ord);
                    if (! ok)
                        throw MinHomError(ErrorKind::BadOrder, levels ? "supplied order is not a k-min ordering"
                                : "supplied order is not a min ordering");
                }
                else if (levels)
                    throw MinHomError(ErrorKind::BadOrder, "levels line without an order line");

                return ParsedInstance{ Instance(d, h, table), ord, symmetric };
            }
        };

        auto parse(istream & in, bool target_only) -> ParsedInstance
        {
            Reader reader(target_only);
            string line;
            while (std::getline(in, line)) {
                ++reader.line_number;
                reader.read_line(line);
            }
            return reader.finish();
        }

        auto open(const string & path) -> std::ifstream
        {
            std::ifstream in(path);
            if (! in)
                throw MinHomError(ErrorKind::ParseError, "cannot open '" + path + "'");
            return in;
        }
    }

    auto parse_instance(istream & in) -> ParsedInstance
    {
        return parse(in, false);
    }

    auto parse_instance_file(const string & path) -> ParsedInstance
    {
        auto in = open(path);
        return parse(in, false);
    }

    auto parse_target(istream & in) -> ParsedInstance
    {
        return parse(in, true);
    }

    auto parse_target_file(const string & path) -> ParsedInstance
    {
        auto in = open(path);
        return parse(in, true);
    }

    auto write_instance(ostream & out, const Instance & inst, const optional<Ordering> & ord, bool symmetric) -> void
    {
        auto & h = inst.target();
        auto & d = inst.source();
        if (symmetric)
            out << "sym\n";
        out << "h " << h.size() << "\n";
        for (auto & [a, b] : h.arcs())
            if (! symmetric || a <= b)
                out << "ha " << a << " " << b << "\n";
        if (ord) {
            out << "order";
            for (int a : ord->perm)
                out << " " << a;
            out << "\n";
            if (ord->has_levels()) {
                out << "levels";
                for (int l : ord->levels)
                    out << " " << l;
                out << "\n";
            }
        }
        out << "d " << d.size() << "\n";
        for (auto & [x, y] : d.arcs())
            if (! symmetric || x <= y)
                out << "da " << x << " " << y << "\n";
        for (int x = 0 ; x < d.size() ; ++x)
            for (int a = 0 ; a < h.size() ; ++a) {
                auto & c = inst.cost(x, a);
                if (c.is_infinite() || c.value() != 0)
                    out << "c " << x << " " << a << " " << c.to_string() << "\n";
            }
    }

    auto default_density(int n) -> double
    {
        if (n <= 1)
            return 0.0;
        return std::min(1.0, 2.0 * std::log(double(n)) / n);
    }

    auto generate_instance(const Digraph & target, const GeneratorConfig & cfg, std::uint64_t seed) -> Instance
    {
        if (target.size() == 0)
            throw MinHomError(ErrorKind::Empty, "empty target");
        if (cfg.cost_low > cfg.cost_high)
            throw MinHomError(ErrorKind::BadArgument, "empty cost range");

        std::mt19937_64 rng(seed);
        int n = cfg.size, p = target.size();
        double density = cfg.density ? *cfg.density : default_density(n);
        std::uniform_int_distribution<int> pick(0, p - 1);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        std::uniform_int_distribution<long> price(cfg.cost_low, cfg.cost_high);

        vector<int> planted(n);
        for (auto & a : planted)
            a = pick(rng);

        bool graph = cfg.variant == Variant::BiarcGraph;
        Digraph d(n);
        for (int x = 0 ; x < n ; ++x)
            for (int y = graph ? x + 1 : 0 ; y < n ; ++y) {
                if (x == y)
                    continue;
                if (cfg.bipartite && ! (x < n / 2 && y >= n / 2))
                    continue;
                if (coin(rng) >= density)
                    continue;
                if (! target.has_arc(planted[x], planted[y]))
                    continue;
                if (graph)
                    d.add_edge(x, y);
                else
                    d.add_arc(x, y);
            }

        CostTable costs(n, p);
        for (int x = 0 ; x < n ; ++x)
            for (int a = 0 ; a < p ; ++a)
                costs.set(x, a, Cost(Rational(price(rng))));
        return Instance(d, target, costs);
    }
}

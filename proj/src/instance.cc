/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/instance.hh>

#include <string>

using std::span;
using std::string;
using std::to_string;
using std::vector;

namespace minhom
{
    CostTable::CostTable(int rows, int columns) :
        _rows(rows),
        _columns(columns),
        _data(std::size_t(rows) * columns)
    {
    }

    auto CostTable::rows() const -> int
    {
        return _rows;
    }

    auto CostTable::columns() const -> int
    {
        return _columns;
    }

    auto CostTable::at(int x, int a) const -> const Cost &
    {
        return _data.at(std::size_t(x) * _columns + a);
    }

    auto CostTable::set(int x, int a, const Cost & c) -> void
    {
        _data.at(std::size_t(x) * _columns + a) = c;
    }

    Instance::Instance(Digraph source, Digraph target) :
        Instance(source, target, CostTable(source.size(), target.size()))
    {
    }

    Instance::Instance(Digraph source, Digraph target, CostTable costs) :
        _source(std::move(source)),
        _target(std::move(target)),
        _costs(std::move(costs))
    {
        if (_target.size() == 0)
            throw MinHomError(ErrorKind::Empty, "target digraph has no vertices");
        if (_target.size() > max_target_size)
            throw MinHomError(ErrorKind::SizeLimit, "target has more than 64 vertices");
        if (_costs.rows() != _source.size() || _costs.columns() != _target.size())
            throw MinHomError(ErrorKind::BadArgument, "cost table has the wrong shape");

        _lists.assign(_source.size(), 0);
        for (int x = 0 ; x < _source.size() ; ++x)
            for (int a = 0 ; a < _target.size() ; ++a)
                if (! _costs.at(x, a).is_infinite())
                    _lists[x] |= bit(a);
    }

    auto Instance::source() const -> const Digraph &
    {
        return _source;
    }

    auto Instance::target() const -> const Digraph &
    {
        return _target;
    }

    auto Instance::costs() const -> const CostTable &
    {
        return _costs;
    }

    auto Instance::cost(int x, int a) const -> const Cost &
    {
        return _costs.at(x, a);
    }

    auto Instance::set_cost(int x, int a, const Cost & c) -> void
    {
        _costs.set(x, a, c);
        if (c.is_infinite())
            _lists.at(x) &= ~bit(a);
        else
            _lists.at(x) |= bit(a);
    }

    auto Instance::lists() const -> const vector<VertexMask> &
    {
        return _lists;
    }

    auto Instance::list(int x) const -> VertexMask
    {
        return _lists.at(x);
    }

    auto validate_hom(const Instance & inst, span<const int> map) -> HomCheck
    {
        const auto & d = inst.source();
        const auto & h = inst.target();

        if (int(map.size()) != d.size())
            return Violation{ Violation::Kind::WrongSize, int(map.size()), d.size() };

        for (int x = 0 ; x < d.size() ; ++x)
            if (map[x] < 0 || map[x] >= h.size())
                return Violation{ Violation::Kind::OutOfRange, x, map[x] };

        for (auto & [x, y] : d.arcs())
            if (! h.has_arc(map[x], map[y]))
                return Violation{ Violation::Kind::MissingArc, x, y };

        Homomorphism result{ vector<int>(map.begin(), map.end()), 0 };
        for (int x = 0 ; x < d.size() ; ++x) {
            const auto & c = inst.cost(x, map[x]);
            if (c.is_infinite())
                return Violation{ Violation::Kind::InfiniteCost, x, map[x] };
            result.cost += c.value();
        }
        return result;
    }

    auto eval_cost(const Instance & inst, span<const int> map) -> Cost
    {
        Cost total;
        for (int x = 0 ; x < int(map.size()) ; ++x)
            total = total + inst.cost(x, map[x]);
        return total;
    }

    auto is_valid_hom(const Digraph & source, const Digraph & target, span<const int> map) -> bool
    {
        if (int(map.size()) != source.size())
            return false;
        for (int x : map)
            if (x < 0 || x >= target.size())
                return false;
        for (auto & [x, y] : source.arcs())
            if (! target.has_arc(map[x], map[y]))
                return false;
        return true;
    }

    auto describe(const Violation & v) -> string
    {
        switch (v.kind) {
            case Violation::Kind::WrongSize:    return "map has " + to_string(v.x) + " entries, expected " + to_string(v.y);
            case Violation::Kind::OutOfRange:   return "vertex " + to_string(v.x) + " mapped out of range";
            case Violation::Kind::MissingArc:   return "arc (" + to_string(v.x) + ", " + to_string(v.y) + ") not preserved";
            case Violation::Kind::InfiniteCost: return "vertex " + to_string(v.x) + " mapped outside its list";
        }
        return "unknown violation";
    }
}

#pragma once

#include "hkh/diagram.hpp"

#include <functional>

namespace oracle {

namespace detail {

// Opposite slots agree, neighbours differ.
inline bool alternates(const hkh::Topology& t, const std::function<bool(int)>& reversed)
{
    for (int c = 0; c < t.crossing_count(); ++c) {
        bool incoming[4];
        for (int k = 0; k < 4; ++k)
            incoming[k] = t.slot_is_head(c, k) != reversed(t.slot_edge(c, k));
        if (!(incoming[0] == incoming[2] && incoming[1] == incoming[3] && incoming[0] != incoming[1]))
            return false;
    }
    return true;
}

}  // namespace detail

// Tries every re-orientation of the edges.
inline bool source_sink_exists(const hkh::Diagram& input)
{
    const hkh::Diagram d = hkh::oriented(input);
    const hkh::Topology t(d);
    const int n = t.edge_count();
    for (long mask = 0; mask < (1L << n); ++mask)
        if (detail::alternates(t, [mask](int e) { return ((mask >> e) & 1) != 0; }))
            return true;
    return false;
}

inline bool is_source_sink(const hkh::Diagram& input, const hkh::SourceSink& s)
{
    const hkh::Diagram d = hkh::oriented(input);
    const hkh::Topology t(d);
    if (static_cast<int>(s.forward.size()) != t.edge_count())
        return false;
    return detail::alternates(t, [&](int e) { return !s.forward[static_cast<std::size_t>(e)]; });
}

}  // namespace oracle

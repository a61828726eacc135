#pragma once

// Finite acyclic quivers and their path data.  For an acyclic quiver the
// path set is finite, so each indecomposable projective P_v gets the
// concrete basis "paths starting at v" and all module arithmetic lowers
// to plain F_p matrices indexed by paths.

#include "homcert/int.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace homcert {

struct Quiver {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> arrows;  // (source, target), vertices 1..n

    bool operator==(const Quiver& o) const {
        return vertex_count == o.vertex_count && arrows == o.arrows;
    }
};

inline void validate_quiver(const Quiver& q) {
    if (q.vertex_count < 1) throw Error("quiver needs at least one vertex");
    std::vector<int> indeg(q.vertex_count + 1, 0);
    for (auto [s, t] : q.arrows) {
        if (s < 1 || s > q.vertex_count || t < 1 || t > q.vertex_count)
            throw Error("quiver arrow endpoint out of range");
        ++indeg[t];
    }
    // Kahn's algorithm; anything left over sits on a directed cycle.
    std::vector<int> ready;
    for (int v = 1; v <= q.vertex_count; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    int seen = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++seen;
        for (auto [s, t] : q.arrows)
            if (s == v && --indeg[t] == 0) ready.push_back(t);
    }
    if (seen != q.vertex_count) throw Error("quiver has a directed cycle");
}

struct Path {
    int id = 0;
    int source = 0;
    int target = 0;
    std::vector<int> arrow_seq;  // arrow indices in traversal order

    int length() const { return int(arrow_seq.size()); }
};

// Immutable path table for one quiver, paths ordered by length then
// discovery order (so trivial paths come first and the order is stable).
struct PathAlgebra {
    Quiver quiver;
    std::vector<Path> paths;
    std::map<std::pair<int, std::vector<int>>, int> id_by_route;  // (source, arrows) -> id
    std::vector<std::vector<int>> paths_from;  // per vertex (1-based): path ids with that source

    explicit PathAlgebra(const Quiver& q) : quiver(q) {
        validate_quiver(q);
        paths_from.resize(q.vertex_count + 1);
        for (int v = 1; v <= q.vertex_count; ++v)
            add_path(Path{0, v, v, {}});
        size_t frontier_begin = 0;
        while (frontier_begin < paths.size()) {
            size_t frontier_end = paths.size();
            for (size_t k = frontier_begin; k < frontier_end; ++k)
                for (int a = 0; a < int(quiver.arrows.size()); ++a)
                    if (quiver.arrows[a].first == paths[k].target) {
                        Path ext = paths[k];
                        ext.arrow_seq.push_back(a);
                        ext.target = quiver.arrows[a].second;
                        add_path(std::move(ext));
                    }
            frontier_begin = frontier_end;
        }
    }

    int path_id(int source, const std::vector<int>& route) const {
        auto it = id_by_route.find({source, route});
        if (it == id_by_route.end()) throw Error("no such path");
        return it->second;
    }

    // first pi (w -> v), then rho (v -> u); result runs w -> u
    int concatenate(int pi, int rho) const {
        const Path &p = paths[pi], &r = paths[rho];
        if (p.target != r.source) throw Error("paths not composable");
        std::vector<int> route = p.arrow_seq;
        route.insert(route.end(), r.arrow_seq.begin(), r.arrow_seq.end());
        return path_id(p.source, route);
    }

    // dim of the projective at v = number of paths starting there
    int projective_dim(int v) const { return int(paths_from[v].size()); }

    // ids of paths from w to v, ascending: a basis of Hom(P_v, P_w)
    std::vector<int> paths_between(int w, int v) const {
        std::vector<int> out;
        for (int id : paths_from[w])
            if (paths[id].target == v) out.push_back(id);
        return out;
    }

    // position of a path inside the basis of its source's projective
    int index_in_projective(int id) const {
        const auto& list = paths_from[paths[id].source];
        auto it = std::lower_bound(list.begin(), list.end(), id);
        if (it == list.end() || *it != id) throw Error("path index lookup failed");
        return int(it - list.begin());
    }

  private:
    void add_path(Path p) {
        p.id = int(paths.size());
        id_by_route[{p.source, p.arrow_seq}] = p.id;
        paths_from[p.source].push_back(p.id);
        paths.push_back(std::move(p));
    }
};

}  // namespace homcert

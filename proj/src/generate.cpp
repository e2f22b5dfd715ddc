#include "hardcount/generate.hpp"

#include <algorithm>
#include <set>

#include "hardcount/rng.hpp"

namespace hardcount {

Graph make_path(int n) {
    if (n < 1) throw precondition_error("path needs at least one vertex");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, e);
}

Graph make_cycle(int n) {
    if (n < 3) throw precondition_error("cycle needs at least three vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, e);
}

Graph make_grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw precondition_error("grid needs positive dimensions");
    std::vector<std::pair<int, int>> e;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph::from_edges(rows * cols, e);
}

Graph make_complete(int n) {
    if (n < 1) throw precondition_error("complete graph needs at least one vertex");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

Graph make_random_regular(int n, int d, std::uint64_t seed) {
    if (d < 0 || d >= n) throw precondition_error("random_regular needs 0 <= d < n");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw precondition_error("random_regular needs n*d even");
    Rng rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<int> stubs;
        stubs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
        for (int v = 0; v < n; ++v)
            for (int j = 0; j < d; ++j) stubs.push_back(v);
        // Fisher-Yates over stubs, then pair consecutive entries.
        for (std::size_t i = stubs.size(); i > 1; --i)
            std::swap(stubs[i - 1], stubs[rng.uniform_index(i)]);
        std::set<std::pair<int, int>> es;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v) { ok = false; break; }
            auto e = std::minmax(u, v);
            if (!es.insert({e.first, e.second}).second) { ok = false; break; }
        }
        if (!ok) continue;
        return Graph::from_edges(n, {es.begin(), es.end()});
    }
    throw budget_error("random_regular pairing model failed to produce a simple graph");
}

Graph generate_from_spec(const std::string& spec, std::uint64_t seed) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw parse_error("generator spec needs kind:params, got " + spec);
    const std::string kind = spec.substr(0, colon);
    const std::string params = spec.substr(colon + 1);
    try {
        if (kind == "path") return make_path(std::stoi(params));
        if (kind == "cycle") return make_cycle(std::stoi(params));
        if (kind == "complete") return make_complete(std::stoi(params));
        if (kind == "grid") {
            auto x = params.find('x');
            if (x == std::string::npos) throw parse_error("grid spec needs RxC");
            return make_grid(std::stoi(params.substr(0, x)), std::stoi(params.substr(x + 1)));
        }
        if (kind == "random_regular") {
            auto comma = params.find(',');
            if (comma == std::string::npos) throw parse_error("random_regular spec needs N,D");
            return make_random_regular(std::stoi(params.substr(0, comma)),
                                       std::stoi(params.substr(comma + 1)), seed);
        }
    } catch (const std::invalid_argument&) {
        throw parse_error("bad generator parameters: " + spec);
    }
    throw parse_error("unknown generator kind: " + kind);
}

} // namespace hardcount

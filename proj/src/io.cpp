#include "hardcount/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hardcount {

static Graph parse_json_graph(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad JSON graph: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("edges")) throw parse_error("JSON graph needs \"n\" and \"edges\"");
    int n = j["n"].get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) throw parse_error("JSON edge must be a pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Graph::from_edges(n, edges);
}

Graph parse_graph(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw parse_error("empty graph input");
    if (text[first] == '{') return parse_json_graph(text);

    std::istringstream in(text);
    int n = -1;
    long long m = -1;
    if (!(in >> n >> m)) throw parse_error("edge list needs a header line \"n m\"");
    if (n < 0 || m < 0) throw parse_error("edge list header out of range");
    std::vector<std::pair<int, int>> edges;
    for (long long i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw parse_error("edge list truncated: expected " + std::to_string(m) + " edges");
        edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, edges);
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open graph file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

} // namespace hardcount

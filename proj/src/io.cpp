#include "pcp/io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "pcp/error.hpp"

namespace pcp {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
    for (int j = 0; j < data.p; ++j) {
        if (j) out << ',';
        out << data.names[j];
    }
    out << '\n';
    for (int i = 0; i < data.n; ++i) {
        for (int j = 0; j < data.p; ++j) {
            if (j) out << ',';
            out << format_double(data.at(i, j));
        }
        out << '\n';
    }
}

Dataset read_dataset_csv(std::istream& in) {
    Dataset data;
    std::string line;
    int line_no = 0;

    auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(s);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!s.empty() && s.back() == ',') fields.push_back("");
        return fields;
    };

    if (!std::getline(in, line)) throw ParseError("empty dataset file", 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    data.names = split(line);
    data.p = static_cast<int>(data.names.size());
    if (data.p < 1) throw ParseError("missing header", line_no);

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line);
        if (static_cast<int>(fields.size()) != data.p)
            throw ParseError("expected " + std::to_string(data.p) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        for (const auto& f : fields) {
            char* end = nullptr;
            const double v = std::strtod(f.c_str(), &end);
            if (end == f.c_str() || *end != '\0') throw ParseError("bad number '" + f + "'", line_no);
            data.values.push_back(v);
        }
        ++data.n;
    }
    if (data.n == 0) throw ParseError("dataset has no rows", line_no);
    return data;
}

namespace {

const char* mark_text(EdgeMark m) {
    switch (m) {
        case EdgeMark::Undirected: return "---";
        case EdgeMark::DirectedForward: return "-->";
        case EdgeMark::DirectedBackward: return "<--";
        case EdgeMark::Bidirected: return "<->";
        default: return "";
    }
}

}  // namespace

void write_graph(std::ostream& out, const MixedGraph& graph, std::span<const std::string> names) {
    PCP_CHECK(static_cast<int>(names.size()) == graph.vertex_count(),
              "write_graph: name count mismatch");
    std::vector<std::string> lines;
    for (const auto& [i, j] : graph.edge_pairs()) {
        std::string line = names[i];
        line += ' ';
        line += mark_text(graph.mark(i, j));
        line += ' ';
        line += names[j];
        if (graph.is_ambiguous(i, j)) line += " ambiguous";
        lines.push_back(std::move(line));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& line : lines) out << line << '\n';
}

MixedGraph read_graph(std::istream& in, std::span<const std::string> names) {
    std::map<std::string, int> index;
    for (size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);

    MixedGraph graph(static_cast<int>(names.size()));
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ss >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens.size() != 3 && tokens.size() != 4)
            throw ParseError("expected 'NAME MARK NAME [ambiguous]'", line_no);

        const auto a = index.find(tokens[0]);
        const auto b = index.find(tokens[2]);
        if (a == index.end()) throw ParseError("unknown vertex '" + tokens[0] + "'", line_no);
        if (b == index.end()) throw ParseError("unknown vertex '" + tokens[2] + "'", line_no);
        if (a->second == b->second) throw ParseError("self loop", line_no);

        EdgeMark mark;
        if (tokens[1] == "---")
            mark = EdgeMark::Undirected;
        else if (tokens[1] == "-->")
            mark = EdgeMark::DirectedForward;
        else if (tokens[1] == "<--")
            mark = EdgeMark::DirectedBackward;
        else if (tokens[1] == "<->")
            mark = EdgeMark::Bidirected;
        else
            throw ParseError("bad mark '" + tokens[1] + "'", line_no);

        if (graph.adjacent(a->second, b->second)) throw ParseError("duplicate edge", line_no);
        graph.set_mark(a->second, b->second, mark);

        if (tokens.size() == 4) {
            if (tokens[3] != "ambiguous") throw ParseError("bad flag '" + tokens[3] + "'", line_no);
            if (mark != EdgeMark::Undirected)
                throw ParseError("only undirected edges can be ambiguous", line_no);
            graph.set_ambiguous(a->second, b->second, true);
        }
    }
    return graph;
}

}  // namespace pcp

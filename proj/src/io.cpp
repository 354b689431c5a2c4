#include "brp/io.hpp"

#include <fstream>
#include <sstream>

namespace brp {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(cur);
    for (auto& s : cells) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
    }
    return cells;
}

json to_json(const ValidationReport& r) {
    json j;
    j["character"] = {{"pass", r.character}, {"steps_checked", r.steps_checked}};
    if (!r.character) j["character"]["witness"] = r.character_witness;
    j["chen"] = {{"pass", r.chen}, {"triples_checked", r.triples_checked}};
    if (!r.chen) j["chen"]["witness"] = r.chen_witness;
    json h = json::object();
    for (const auto& [k, v] : r.holder) h[k] = v;
    j["holder_grid_diagnostic"] = h;
    return j;
}

}  // namespace brp

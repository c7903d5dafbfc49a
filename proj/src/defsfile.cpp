#include "webcas/defsfile.hpp"

#include <fstream>
#include <sstream>

namespace webcas {

const std::string& DefsSection::get(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return v;
    throw Error("missing entry '" + key + "' in section [" + name + "]");
}

bool DefsSection::has(const std::string& key) const {
    for (const auto& [k, v] : entries) {
        (void)v;
        if (k == key) return true;
    }
    return false;
}

const DefsSection& DefsFile::section(const std::string& name) const {
    for (const auto& s : sections)
        if (s.name == name) return s;
    throw Error("missing section [" + name + "]");
}

bool DefsFile::has_section(const std::string& name) const {
    for (const auto& s : sections)
        if (s.name == name) return true;
    return false;
}

static std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

DefsFile parse_defs(const std::string& content) {
    DefsFile out;
    out.raw = content;
    std::istringstream in(content);
    std::string line, logical;
    auto flush = [&]() {
        std::string t = strip(logical);
        logical.clear();
        if (t.empty() || t[0] == '#') return;
        if (t.front() == '[' && t.back() == ']') {
            out.sections.push_back({strip(t.substr(1, t.size() - 2)), {}});
            return;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos) throw Error("malformed definition line: " + t);
        if (out.sections.empty()) out.sections.push_back({"", {}});
        out.sections.back().entries.emplace_back(strip(t.substr(0, eq)), strip(t.substr(eq + 1)));
    };
    while (std::getline(in, line)) {
        std::string t = strip(line);
        if (!t.empty() && t.back() == '\\') {
            logical += t.substr(0, t.size() - 1) + " ";
            continue;
        }
        logical += line;
        flush();
    }
    flush();
    return out;
}

DefsFile load_defs(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_defs(ss.str());
}

std::string data_file(const std::string& name) {
#ifdef WEBCAS_DATA_DIR
    return std::string(WEBCAS_DATA_DIR) + "/" + name;
#else
    return "data/" + name;
#endif
}

} // namespace webcas

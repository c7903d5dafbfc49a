#pragma once

#include "webcas/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace webcas {

// Line-oriented definition file: '#' comments, [section] headers and
// "name = expression" entries (an entry continues onto the next line while
// the line ends with '\').
struct DefsSection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
    const std::string& get(const std::string& key) const;
    bool has(const std::string& key) const;
};

struct DefsFile {
    std::vector<DefsSection> sections;
    std::string raw;  // exact file bytes, for content hashing

    const DefsSection& section(const std::string& name) const;
    bool has_section(const std::string& name) const;
};

DefsFile load_defs(const std::string& path);
DefsFile parse_defs(const std::string& content);

std::string data_file(const std::string& name);  // resolves under the bundled data dir

} // namespace webcas

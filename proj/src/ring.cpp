#include "webcas/ring.hpp"

namespace webcas {

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
        auto [it, fresh] = index_.emplace(names_[static_cast<size_t>(i)], i);
        (void)it;
        if (!fresh) throw Error("duplicate variable name: " + names_[static_cast<size_t>(i)]);
    }
}

int Ring::index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

RingPtr make_ring(std::vector<std::string> names) {
    return std::make_shared<const Ring>(std::move(names));
}

std::string hash_hex(const std::string& s) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace webcas

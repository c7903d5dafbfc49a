#pragma once

#include "webcas/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace webcas {

// Ordered set of variable names. The declaration order fixes the monomial
// order (graded lex) for every polynomial built over the ring.
class Ring {
public:
    explicit Ring(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(static_cast<size_t>(i)); }
    const std::vector<std::string>& names() const { return names_; }

    // -1 when absent.
    int index(const std::string& name) const;
    bool has(const std::string& name) const { return index(name) >= 0; }

    bool operator==(const Ring& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);

inline void check_same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return;
    if (!a || !b || !(*a == *b)) throw Error("ring mismatch");
}

} // namespace webcas

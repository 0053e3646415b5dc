#pragma once

#include <cstdint>
#include <vector>

namespace anoncontract {

// Subset of agents over a fixed universe [0, n). Stored as a bit vector, so a
// single machine word covers n <= 64 and larger universes extend seamlessly.
// Ids are 0-based internally; reports and JSON use 1-based ids.
class AgentSet {
public:
    AgentSet() : n_(0) {}
    explicit AgentSet(int n) : n_(n), bits_((n + 63) / 64, 0) {}

    static AgentSet full(int n);
    // Low n bits of mask select members; n <= 64.
    static AgentSet from_mask(int n, std::uint64_t mask);

    int universe() const { return n_; }
    int size() const;
    bool empty() const { return size() == 0; }
    bool contains(int i) const;
    void add(int i);
    void remove(int i);
    void toggle(int i);

    AgentSet with(int i) const;
    AgentSet without(int i) const;

    // Ascending 0-based member ids.
    std::vector<int> members() const;

    bool operator==(const AgentSet& o) const { return n_ == o.n_ && bits_ == o.bits_; }
    bool operator!=(const AgentSet& o) const { return !(*this == o); }

    // Lexicographic order on the ascending member lists.
    static bool lex_less(const AgentSet& a, const AgentSet& b);

private:
    int n_;
    std::vector<std::uint64_t> bits_;
};

} // namespace anoncontract

#include "anoncontract/agent_set.hpp"

#include <bit>
#include <stdexcept>

namespace anoncontract {

AgentSet AgentSet::full(int n) {
    AgentSet s(n);
    for (int i = 0; i < n; ++i) s.add(i);
    return s;
}

AgentSet AgentSet::from_mask(int n, std::uint64_t mask) {
    if (n > 64) throw std::logic_error("AgentSet::from_mask: universe exceeds 64");
    AgentSet s(n);
    if (n > 0) s.bits_[0] = n == 64 ? mask : (mask & ((std::uint64_t{1} << n) - 1));
    return s;
}

int AgentSet::size() const {
    int count = 0;
    for (std::uint64_t word : bits_) count += std::popcount(word);
    return count;
}

bool AgentSet::contains(int i) const {
    if (i < 0 || i >= n_) return false;
    return (bits_[i / 64] >> (i % 64)) & 1;
}

void AgentSet::add(int i) {
    if (i < 0 || i >= n_) throw std::logic_error("AgentSet::add: id out of range");
    bits_[i / 64] |= std::uint64_t{1} << (i % 64);
}

void AgentSet::remove(int i) {
    if (i < 0 || i >= n_) throw std::logic_error("AgentSet::remove: id out of range");
    bits_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

void AgentSet::toggle(int i) {
    if (contains(i)) remove(i); else add(i);
}

AgentSet AgentSet::with(int i) const {
    AgentSet s = *this;
    s.add(i);
    return s;
}

AgentSet AgentSet::without(int i) const {
    AgentSet s = *this;
    s.remove(i);
    return s;
}

std::vector<int> AgentSet::members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (int i = 0; i < n_; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

bool AgentSet::lex_less(const AgentSet& a, const AgentSet& b) {
    return a.members() < b.members();
}

} // namespace anoncontract

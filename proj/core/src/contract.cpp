#include "anoncontract/contract.hpp"

#include "anoncontract/errors.hpp"

#include <stdexcept>
#include <string>

namespace anoncontract {

AnonymousContract::AnonymousContract(std::vector<Payment> w, Mode mode)
    : w_(std::move(w)), mode_(mode) {
    for (std::size_t j = 0; j < w_.size(); ++j) {
        if (!w_[j].blocked && w_[j].value.mode() != mode_)
            throw ValidationError("contract entry mode mismatch at position " + std::to_string(j + 1));
    }
}

AnonymousContract AnonymousContract::uniform(int n, const Scalar& w) {
    std::vector<Payment> entries(static_cast<std::size_t>(n), Payment::finite(w));
    return AnonymousContract(std::move(entries), w.mode());
}

AnonymousContract AnonymousContract::zero(int n, Mode mode) {
    return uniform(n, Scalar::zero(mode));
}

const Payment& AnonymousContract::at(int j) const {
    if (j < 1 || j > n())
        throw std::logic_error("contract entry index out of range: " + std::to_string(j));
    return w_[static_cast<std::size_t>(j - 1)];
}

bool AnonymousContract::has_blocked() const {
    for (const Payment& p : w_)
        if (p.blocked) return true;
    return false;
}

bool AnonymousContract::limited_liability() const {
    for (const Payment& p : w_)
        if (p.blocked || p.value.sign() < 0) return false;
    return true;
}

AnonymousContract AnonymousContract::in_mode(Mode mode) const {
    std::vector<Payment> entries;
    entries.reserve(w_.size());
    for (const Payment& p : w_)
        entries.push_back(p.blocked ? Payment::make_blocked()
                                    : Payment::finite(scalar_in_mode(p.value, mode)));
    return AnonymousContract(std::move(entries), mode);
}

} // namespace anoncontract

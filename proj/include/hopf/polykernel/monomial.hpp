#pragma once

#include "hopf/polykernel/ring_context.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <stdexcept>

namespace hopf {

/// Power product stored as a sorted multiset of variable handles.
///
/// Sixteen bytes: fifteen handle slots plus the total degree. Slots past the
/// degree are kept zero so that equality and hashing can work on raw words.
class Monomial {
public:
    static constexpr int kCapacity = 15;

    Monomial() { slots_.fill(0); }

    static Monomial variable(VarHandle h) {
        Monomial m;
        m.slots_[0] = h;
        m.deg_ = 1;
        return m;
    }

    [[nodiscard]] int degree() const { return deg_; }
    [[nodiscard]] VarHandle at(int i) const { return slots_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] bool is_one() const { return deg_ == 0; }

    [[nodiscard]] int exponent(VarHandle h) const {
        int c = 0;
        for (int i = 0; i < deg_; ++i) c += slots_[static_cast<std::size_t>(i)] == h;
        return c;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        int d = a.deg_ + b.deg_;
        if (d > kCapacity) throw std::length_error("Monomial: total degree exceeds capacity");
        Monomial r;
        std::merge(a.slots_.begin(), a.slots_.begin() + a.deg_, b.slots_.begin(), b.slots_.begin() + b.deg_,
                   r.slots_.begin());
        r.deg_ = static_cast<std::uint8_t>(d);
        return r;
    }

    /// Removes one factor of h. Returns the exponent h had before removal.
    int divide_once(VarHandle h) {
        int e = exponent(h);
        if (e == 0) return 0;
        auto first = std::find(slots_.begin(), slots_.begin() + deg_, h);
        std::copy(first + 1, slots_.begin() + deg_, first);
        --deg_;
        slots_[deg_] = 0;
        return e;
    }

    /// Removes every factor of h and returns its exponent.
    int remove_all(VarHandle h) {
        int e = 0;
        int w = 0;
        for (int i = 0; i < deg_; ++i) {
            if (slots_[static_cast<std::size_t>(i)] == h) {
                ++e;
            } else {
                slots_[static_cast<std::size_t>(w++)] = slots_[static_cast<std::size_t>(i)];
            }
        }
        for (int i = w; i < deg_; ++i) slots_[static_cast<std::size_t>(i)] = 0;
        deg_ = static_cast<std::uint8_t>(w);
        return e;
    }

    [[nodiscard]] std::uint64_t word(int i) const {
        std::uint64_t w;
        std::memcpy(&w, reinterpret_cast<const unsigned char*>(this) + 8 * i, 8);
        return w;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.word(0) == b.word(0) && a.word(1) == b.word(1);
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    /// Graded order: total degree first, then lexicographic on the sorted handles.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
        return std::lexicographical_compare(a.slots_.begin(), a.slots_.begin() + a.deg_, b.slots_.begin(),
                                            b.slots_.begin() + b.deg_);
    }

    template <class H>
    friend H AbslHashValue(H h, const Monomial& m) {
        return H::combine(std::move(h), m.word(0), m.word(1));
    }

private:
    std::array<VarHandle, kCapacity> slots_{};
    std::uint8_t deg_ = 0;
};

static_assert(sizeof(Monomial) == 16);

}  // namespace hopf

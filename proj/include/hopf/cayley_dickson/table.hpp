#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopf {

enum class AlgebraDim : int { R = 1, C = 2, H = 4, O = 8, S = 16 };

inline int dim_value(AlgebraDim d) { return static_cast<int>(d); }

inline AlgebraDim algebra_dim(int n) {
    switch (n) {
        case 1: return AlgebraDim::R;
        case 2: return AlgebraDim::C;
        case 4: return AlgebraDim::H;
        case 8: return AlgebraDim::O;
        case 16: return AlgebraDim::S;
        default: throw std::invalid_argument("algebra dimension must be 1, 2, 4, 8 or 16, got " + std::to_string(n));
    }
}

inline const char* dim_name(AlgebraDim d) {
    switch (d) {
        case AlgebraDim::R: return "real";
        case AlgebraDim::C: return "complex";
        case AlgebraDim::H: return "quaternion";
        case AlgebraDim::O: return "octonion";
        case AlgebraDim::S: return "sedenion";
    }
    return "?";
}

/// e_i * e_j = sign(i, j) * e_{index(i, j)}.
class MultiplicationTable {
public:
    struct Entry {
        std::int8_t sign = 0;
        std::uint8_t index = 0;
    };
    /// Contribution of (i, j) to output coefficient k.
    struct Product {
        std::uint8_t i, j;
        std::int8_t sign;
    };

    MultiplicationTable() = default;
    explicit MultiplicationTable(int n) : n_(n), entries_(static_cast<std::size_t>(n * n)) {}

    [[nodiscard]] int size() const { return n_; }
    [[nodiscard]] const Entry& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * n_ + j)]; }
    Entry& at(int i, int j) { return entries_[static_cast<std::size_t>(i * n_ + j)]; }

    /// Products grouped by output index.
    [[nodiscard]] const std::vector<std::vector<Product>>& by_output() const { return by_output_; }

    void finalize() {
        by_output_.assign(static_cast<std::size_t>(n_), {});
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                const Entry& e = (*this)(i, j);
                if (e.sign == 0) throw std::logic_error("MultiplicationTable: incomplete table");
                by_output_[e.index].push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j), e.sign});
            }
        }
    }

    friend bool operator==(const MultiplicationTable& a, const MultiplicationTable& b) {
        if (a.n_ != b.n_) return false;
        for (std::size_t k = 0; k < a.entries_.size(); ++k) {
            if (a.entries_[k].sign != b.entries_[k].sign || a.entries_[k].index != b.entries_[k].index) return false;
        }
        return true;
    }

private:
    int n_ = 0;
    std::vector<Entry> entries_;
    std::vector<std::vector<Product>> by_output_;
};

namespace detail {

/// Oriented triples (i, j, k) with e_i e_j = e_k.
inline constexpr std::array<std::array<int, 3>, 7> kOctonionTriples = {{
    {1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5},
}};

inline MultiplicationTable build_octonion_table() {
    MultiplicationTable t(8);
    for (int i = 0; i < 8; ++i) {
        t.at(0, i) = {1, static_cast<std::uint8_t>(i)};
        t.at(i, 0) = {1, static_cast<std::uint8_t>(i)};
    }
    for (int i = 1; i < 8; ++i) t.at(i, i) = {-1, 0};
    for (const auto& tr : kOctonionTriples) {
        for (int r = 0; r < 3; ++r) {
            int a = tr[r], b = tr[(r + 1) % 3], c = tr[(r + 2) % 3];
            t.at(a, b) = {1, static_cast<std::uint8_t>(c)};
            t.at(b, a) = {-1, static_cast<std::uint8_t>(c)};
        }
    }
    t.finalize();
    return t;
}

inline MultiplicationTable restrict_table(const MultiplicationTable& full, int n) {
    MultiplicationTable t(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto& e = full(i, j);
            if (e.index >= n) throw std::logic_error("restrict_table: basis subset is not a subalgebra");
            t.at(i, j) = e;
        }
    }
    t.finalize();
    return t;
}

/// Doubling of a table with (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)).
inline MultiplicationTable double_table(const MultiplicationTable& base) {
    const int n = base.size();
    MultiplicationTable t(2 * n);
    auto conj_sign = [](int idx) { return idx == 0 ? 1 : -1; };
    for (int I = 0; I < 2 * n; ++I) {
        for (int J = 0; J < 2 * n; ++J) {
            const int i = I % n, j = J % n;
            const bool hi = I >= n, hj = J >= n;
            MultiplicationTable::Entry out;
            if (!hi && !hj) {  // (e_i,0)(e_j,0) = (e_i e_j, 0)
                out = base(i, j);
            } else if (!hi && hj) {  // (e_i,0)(0,e_j) = (0, e_j e_i)
                out = base(j, i);
                out.index = static_cast<std::uint8_t>(out.index + n);
            } else if (hi && !hj) {  // (0,e_i)(e_j,0) = (0, e_i conj(e_j))
                out = base(i, j);
                out.sign = static_cast<std::int8_t>(out.sign * conj_sign(j));
                out.index = static_cast<std::uint8_t>(out.index + n);
            } else {  // (0,e_i)(0,e_j) = (-conj(e_j) e_i, 0)
                out = base(j, i);
                out.sign = static_cast<std::int8_t>(-out.sign * conj_sign(j));
            }
            t.at(I, J) = out;
        }
    }
    t.finalize();
    return t;
}

}  // namespace detail

/// Multiplication table used throughout: the octonion table with
/// e_i e_j = -delta_ij + eps_ijk e_k for dims up to 8 (restricted to the
/// subalgebras spanned by e0, e0..e1, e0..e3), and its doubling for dim 16.
inline const MultiplicationTable& table(AlgebraDim d) {
    static const MultiplicationTable oct = detail::build_octonion_table();
    static const MultiplicationTable r = detail::restrict_table(oct, 1);
    static const MultiplicationTable c = detail::restrict_table(oct, 2);
    static const MultiplicationTable h = detail::restrict_table(oct, 4);
    static const MultiplicationTable s = detail::double_table(oct);
    switch (d) {
        case AlgebraDim::R: return r;
        case AlgebraDim::C: return c;
        case AlgebraDim::H: return h;
        case AlgebraDim::O: return oct;
        case AlgebraDim::S: return s;
    }
    throw std::invalid_argument("table: bad dimension");
}

/// Table produced by repeated doubling starting from the reals.
inline MultiplicationTable cayley_dickson_recursive_table(AlgebraDim d) {
    MultiplicationTable t(1);
    t.at(0, 0) = {1, 0};
    t.finalize();
    while (t.size() < dim_value(d)) t = detail::double_table(t);
    return t;
}

/// Signed basis permutation: fixed-table basis e_i maps to sign[i] * c_{index[i]}.
struct BasisRelabeling {
    std::vector<int> sign;
    std::vector<int> index;
};

/// Relabels the recursive octonions via the basic triple (c1, c2, c4):
/// e1 -> c1, e2 -> c2, e4 -> c4 and the remaining units are the products
/// e3 = e1 e2, e5 = e1 e4, e6 = e2 e4, e7 = (e1 e2) e4 taken in the target.
inline BasisRelabeling basic_triple_relabeling(const MultiplicationTable& target) {
    if (target.size() != 8) throw std::invalid_argument("basic_triple_relabeling: needs an 8-dimensional table");
    BasisRelabeling m{std::vector<int>(8, 1), std::vector<int>(8, 0)};
    auto mul = [&](int sa, int ia, int sb, int ib, int& so, int& io) {
        const auto& e = target(ia, ib);
        so = sa * sb * e.sign;
        io = e.index;
    };
    m.index[0] = 0;
    m.index[1] = 1;
    m.index[2] = 2;
    m.index[4] = 4;
    mul(1, 1, 1, 2, m.sign[3], m.index[3]);
    mul(1, 1, 1, 4, m.sign[5], m.index[5]);
    mul(1, 2, 1, 4, m.sign[6], m.index[6]);
    mul(m.sign[3], m.index[3], 1, 4, m.sign[7], m.index[7]);
    return m;
}

/// Number of basis pairs (i, j) where relabel(e_i) relabel(e_j) differs
/// from relabel(e_i e_j). Zero means the relabeling is an isomorphism.
inline int relabeling_mismatches(const MultiplicationTable& source, const MultiplicationTable& target,
                                 const BasisRelabeling& m) {
    int bad = 0;
    const int n = source.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto& e = target(m.index[i], m.index[j]);
            int lhs_sign = m.sign[i] * m.sign[j] * e.sign;
            int lhs_index = e.index;
            const auto& s = source(i, j);
            int rhs_sign = s.sign * m.sign[s.index];
            int rhs_index = m.index[s.index];
            if (lhs_sign != rhs_sign || lhs_index != rhs_index) ++bad;
        }
    }
    return bad;
}

}  // namespace hopf

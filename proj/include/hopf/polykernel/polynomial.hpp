#pragma once

#include "hopf/polykernel/monomial.hpp"
#include "hopf/polykernel/rational.hpp"
#include "hopf/polykernel/ring_context.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hopf {

struct Term {
    Monomial mono;
    Rational coeff;
};

class PolyAccumulator;

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted by the graded monomial order with no zero
/// coefficients, so structural equality is mathematical equality. A
/// polynomial without a ring context is a constant and mixes freely with any
/// context; two different contexts never mix.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_.push_back({Monomial{}, c});
    }
    Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    static Polynomial variable(const RingPtr& ctx, const VariableId& v) {
        Polynomial p;
        p.ctx_ = ctx;
        p.terms_.push_back({Monomial::variable(ctx->handle(v)), Rational(1)});
        return p;
    }
    static Polynomial constant(const RingPtr& ctx, const Rational& c) {
        Polynomial p(c);
        p.ctx_ = ctx;
        return p;
    }

    [[nodiscard]] const RingPtr& context() const { return ctx_; }
    [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    [[nodiscard]] Rational constant_term() const {
        if (!terms_.empty() && terms_[0].mono.is_one()) return terms_[0].coeff;
        return Rational(0);
    }

    /// Highest total degree; -1 for the zero polynomial.
    [[nodiscard]] int total_degree() const { return terms_.empty() ? -1 : terms_.back().mono.degree(); }
    /// Lowest total degree of a nonzero term; -1 for the zero polynomial.
    [[nodiscard]] int min_degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }

    /// Total degree counting only base coordinates x, y.
    [[nodiscard]] int min_base_degree() const {
        int best = -1;
        for (const auto& t : terms_) {
            int d = base_degree(t.mono);
            if (best < 0 || d < best) best = d;
        }
        return best;
    }
    [[nodiscard]] int max_base_degree() const {
        int best = -1;
        for (const auto& t : terms_) best = std::max(best, base_degree(t.mono));
        return best;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        if (!a.is_constant() || !b.is_constant()) check_contexts(a, b);
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
        }
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    [[nodiscard]] Polynomial scaled(const Rational& c) const {
        if (c.is_zero()) return zero_like(*this);
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coeff *= c;
        return r;
    }

    /// Formal partial derivative in a base coordinate.
    [[nodiscard]] Polynomial derive(const VariableId& v) const {
        if (!v.is_base())
            throw std::invalid_argument("derive: section variables are parameters, not coordinates (" + v.name() + ")");
        if (!ctx_) return zero_like(*this);
        auto h = ctx_->find(v);
        if (!h) return zero_like(*this);
        return derive_handle(*h);
    }

    [[nodiscard]] Polynomial derive_handle(VarHandle h) const {
        Polynomial r;
        r.ctx_ = ctx_;
        std::vector<Term> out;
        for (const auto& t : terms_) {
            Monomial m = t.mono;
            int e = m.divide_once(h);
            if (e == 0) continue;
            out.push_back({m, t.coeff * Rational(e)});
        }
        // Dividing by a single variable is not order preserving in general.
        std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
        r.terms_ = std::move(out);
        return r;
    }

    /// Exact value under a total assignment.
    [[nodiscard]] Rational evaluate(const std::map<VariableId, Rational>& assignment) const {
        if (terms_.empty()) return Rational(0);
        std::vector<const Rational*> vals;
        if (ctx_) {
            vals.assign(ctx_->size(), nullptr);
            for (const auto& t : terms_) {
                for (int i = 0; i < t.mono.degree(); ++i) {
                    VarHandle h = t.mono.at(i);
                    if (vals[h]) continue;
                    auto it = assignment.find(ctx_->variable(h));
                    if (it == assignment.end())
                        throw std::invalid_argument("evaluate: missing variable " + ctx_->variable(h).name());
                    vals[h] = &it->second;
                }
            }
        }
        Rational sum(0);
        for (const auto& t : terms_) {
            Rational v = t.coeff;
            for (int i = 0; i < t.mono.degree(); ++i) v *= *vals[t.mono.at(i)];
            sum += v;
        }
        return sum;
    }

    /// Floating evaluation with values indexed by variable handle.
    [[nodiscard]] double evaluate_double(const std::vector<double>& by_handle) const {
        double sum = 0.0;
        for (const auto& t : terms_) {
            double v = t.coeff.to_double();
            for (int i = 0; i < t.mono.degree(); ++i) v *= by_handle.at(t.mono.at(i));
            sum += v;
        }
        return sum;
    }

    /// Substitutes the given variables and keeps the rest symbolic.
    [[nodiscard]] Polynomial partial_evaluate(const std::map<VariableId, Rational>& assignment) const;

    [[nodiscard]] std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Rational c = it->coeff;
            bool neg = c.sign() < 0;
            if (neg) c = -c;
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            first = false;
            bool one = c.is_one();
            if (!one || it->mono.is_one()) os << c.str();
            for (int i = 0; i < it->mono.degree();) {
                VarHandle h = it->mono.at(i);
                int e = 0;
                while (i < it->mono.degree() && it->mono.at(i) == h) {
                    ++e;
                    ++i;
                }
                if (!one || i - e > 0) os << "*";
                one = false;
                os << ctx_->variable(h).name();
                if (e > 1) os << "^" << e;
            }
        }
        return os.str();
    }

    static void check_contexts(const Polynomial& a, const Polynomial& b) {
        if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_) throw std::invalid_argument("Polynomial: ring-context mismatch");
    }
    static RingPtr joint_context(const Polynomial& a, const Polynomial& b) {
        check_contexts(a, b);
        return a.ctx_ ? a.ctx_ : b.ctx_;
    }

private:
    friend class PolyAccumulator;
    RingPtr ctx_;
    std::vector<Term> terms_;

    static Polynomial zero_like(const Polynomial& p) {
        Polynomial r;
        r.ctx_ = p.ctx_;
        return r;
    }

    [[nodiscard]] int base_degree(const Monomial& m) const {
        int d = 0;
        for (int i = 0; i < m.degree(); ++i) d += ctx_->variable(m.at(i)).is_base();
        return d;
    }

    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
        Polynomial r;
        r.ctx_ = joint_context(a, b);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].mono < b.terms_[j].mono)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].mono < a.terms_[i].mono) {
                const Term& t = b.terms_[j++];
                r.terms_.push_back({t.mono, subtract ? -t.coeff : t.coeff});
            } else {
                Rational c = subtract ? a.terms_[i].coeff - b.terms_[j].coeff : a.terms_[i].coeff + b.terms_[j].coeff;
                if (!c.is_zero()) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }
};

/// Hash-based sum of many products. Collects terms without keeping them
/// sorted and canonicalizes once in take().
class PolyAccumulator {
public:
    PolyAccumulator() = default;
    explicit PolyAccumulator(RingPtr ctx) : ctx_(std::move(ctx)) {}

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = map_.try_emplace(m, c);
        if (!inserted) it->second += c;
    }

    void add(const Polynomial& p, const Rational& scale = Rational(1)) {
        adopt(p);
        if (scale.is_zero()) return;
        for (const auto& t : p.terms_) add_term(t.mono, scale.is_one() ? t.coeff : t.coeff * scale);
    }

    void add_product(const Polynomial& p, const Polynomial& q, const Rational& scale = Rational(1)) {
        adopt(p);
        adopt(q);
        if (scale.is_zero() || p.is_zero() || q.is_zero()) return;
        map_.reserve(map_.size() + std::min<std::size_t>(p.size() * q.size(), 1u << 20));
        for (const auto& s : p.terms_) {
            Rational cs = scale.is_one() ? s.coeff : s.coeff * scale;
            for (const auto& t : q.terms_) add_term(s.mono * t.mono, cs * t.coeff);
        }
    }

    /// Adds scale * p * q * r.
    void add_product3(const Polynomial& p, const Polynomial& q, const Polynomial& r,
                      const Rational& scale = Rational(1)) {
        adopt(p);
        adopt(q);
        adopt(r);
        if (scale.is_zero() || p.is_zero() || q.is_zero() || r.is_zero()) return;
        for (const auto& s : p.terms_) {
            for (const auto& t : q.terms_) {
                Monomial st = s.mono * t.mono;
                Rational c = s.coeff * t.coeff * scale;
                for (const auto& u : r.terms_) add_term(st * u.mono, c * u.coeff);
            }
        }
    }

    [[nodiscard]] Polynomial take() {
        Polynomial r;
        r.ctx_ = ctx_;
        r.terms_.reserve(map_.size());
        for (auto& [m, c] : map_) {
            if (!c.is_zero()) r.terms_.push_back({m, std::move(c)});
        }
        map_.clear();
        std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
        return r;
    }

    [[nodiscard]] const RingPtr& context() const { return ctx_; }

private:
    RingPtr ctx_;
    absl::flat_hash_map<Monomial, Rational> map_;

    void adopt(const Polynomial& p) {
        if (!p.ctx_) return;
        if (!ctx_) {
            ctx_ = p.ctx_;
        } else if (ctx_ != p.ctx_) {
            throw std::invalid_argument("Polynomial: ring-context mismatch");
        }
    }
};

inline Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    RingPtr ctx = Polynomial::joint_context(a, b);
    if (a.is_zero() || b.is_zero()) {
        Polynomial z;
        z.ctx_ = ctx;
        return z;
    }
    if (a.is_constant()) return b.scaled(a.constant_term());
    if (b.is_constant()) return a.scaled(b.constant_term());
    PolyAccumulator acc(ctx);
    acc.add_product(a, b);
    return acc.take();
}

inline Polynomial Polynomial::partial_evaluate(const std::map<VariableId, Rational>& assignment) const {
    if (!ctx_) return *this;
    std::vector<std::optional<Rational>> vals(ctx_->size());
    for (const auto& [v, c] : assignment) {
        if (auto h = ctx_->find(v)) vals[*h] = c;
    }
    PolyAccumulator acc(ctx_);
    for (const auto& t : terms_) {
        Monomial m;
        Rational c = t.coeff;
        for (int i = 0; i < t.mono.degree(); ++i) {
            VarHandle h = t.mono.at(i);
            if (vals[h]) {
                c *= *vals[h];
            } else {
                m = m * Monomial::variable(h);
            }
        }
        acc.add_term(m, c);
    }
    return acc.take();
}

/// Polynomial in one base coordinate or section variable of ctx.
inline Polynomial var(const RingPtr& ctx, const VariableId& v) { return Polynomial::variable(ctx, v); }

}  // namespace hopf

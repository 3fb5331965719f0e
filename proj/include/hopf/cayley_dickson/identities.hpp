#pragma once

#include "hopf/cayley_dickson/element.hpp"
#include "hopf/report.hpp"

#include <random>
#include <string>

namespace hopf {

namespace detail {

inline nlohmann::json to_json(const Element<Rational>& e) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : e.coeffs()) j.push_back(c.str());
    return j;
}

}  // namespace detail

struct NormWitness {
    bool found = false;
    Element<Rational> a, b;
    Rational lhs, rhs;
};

/// Searches small integer elements for norm_sq(a b) != norm_sq(a) norm_sq(b).
inline NormWitness find_norm_witness(AlgebraDim d, std::uint64_t seed, int attempts = 10000) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-2, 2);
    NormWitness w;
    for (int t = 0; t < attempts; ++t) {
        Element<Rational> a(d), b(d);
        for (int i = 0; i < dim_value(d); ++i) {
            a[i] = Rational(coef(rng));
            b[i] = Rational(coef(rng));
        }
        Rational lhs = (a * b).norm_sq();
        Rational rhs = a.norm_sq() * b.norm_sq();
        if (lhs != rhs) {
            w = {true, a, b, lhs, rhs};
            return w;
        }
    }
    return w;
}

/// Symbolic proofs of the normed-division-algebra identities with fully
/// indeterminate arguments a, b, c. At dimension 16 the suite instead
/// demonstrates the failure of norm multiplicativity and of alternativity.
inline VerificationReport verify_algebra_identities(AlgebraDim d, std::uint64_t seed = 0) {
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = std::string("algebra/") + dim_name(d);
    rep.seed = seed;

    auto ctx = RingBuilder().add_section("a", dim_value(d)).add_section("b", dim_value(d)).add_section("c", dim_value(d)).build();
    using E = Element<Polynomial>;
    const E a = symbolic(d, ctx, "a");
    const E b = symbolic(d, ctx, "b");
    const E c = symbolic(d, ctx, "c");
    const E one = E::one(d);
    auto scal = [&](const Polynomial& p, const E& e) { return p * e; };
    const Polynomial na = a.norm_sq();
    const bool division = dim_value(d) <= 8;

    // Identities valid in every Cayley-Dickson algebra.
    add_exact(rep, "conjugation_anti_automorphism", residual_terms((a * b).conj() - b.conj() * a.conj()),
              "conj(a b) = conj(b) conj(a)");
    add_exact(rep, "norm_via_conjugate_left", residual_terms(a.conj() * a - scal(na, one)), "conj(a) a = |a|^2");
    add_exact(rep, "norm_via_conjugate_right", residual_terms(a * a.conj() - scal(na, one)), "a conj(a) = |a|^2");
    {
        E two_inner = scal(inner(a, b).scaled(2), one);
        add_exact(rep, "inner_via_conjugate", residual_terms(a * b.conj() + b * a.conj() - two_inner),
                  "2<a,b> = a conj(b) + b conj(a)");
        add_exact(rep, "inner_is_real_part", ((a * b.conj())[0] - inner(a, b)).size(), "<a,b> = Re(a conj(b))");
    }

    if (division) {
        const E bc = b * c;
        const E ab = a * b;
        const E ac = a * c;
        const E ba = b * a;
        const E ca = c * a;
        const Polynomial two_a_bbar = inner(a, b.conj()).scaled(2);
        const E lhs_semi = a * bc + b.conj() * (a.conj() * c);
        add_exact(rep, "semi_associativity", residual_terms(lhs_semi - (ab * c + (b.conj() * a.conj()) * c)),
                  "a(bc) + conj(b)(conj(a)c) = (ab)c + (conj(b)conj(a))c");
        add_exact(rep, "semi_associativity_inner", residual_terms(lhs_semi - scal(two_a_bbar, c)),
                  "a(bc) + conj(b)(conj(a)c) = 2<a,conj(b)> c");
        add_exact(rep, "left_inverse_cleared", residual_terms(a * (a.conj() * b) - scal(na, b)),
                  "a(conj(a) b) = |a|^2 b");
        add_exact(rep, "right_inverse_cleared", residual_terms((b * a.conj()) * a - scal(na, b)),
                  "(b conj(a)) a = |a|^2 b");
        add_exact(rep, "polarized_norm_left", (inner(ab, ac) - na * inner(b, c)).size(),
                  "<ab,ac> = |a|^2 <b,c>");
        add_exact(rep, "polarized_norm_right", (inner(ba, ca) - na * inner(b, c)).size(),
                  "<ba,ca> = |a|^2 <b,c>");
        add_exact(rep, "inner_switch_left", (inner(ab, c) - inner(b, a.conj() * c)).size(), "<ab,c> = <b,conj(a)c>");
        add_exact(rep, "inner_switch_right", (inner(ba, c) - inner(b, c * a.conj())).size(), "<ba,c> = <b,c conj(a)>");
        const E aba = ab * a;
        add_exact(rep, "flexible", residual_terms(a * ba - aba), "a(ba) = (ab)a");
        add_exact(rep, "conjugation_formula", residual_terms(aba - (scal(two_a_bbar, a) - scal(na, b.conj()))),
                  "aba = 2<a,conj(b)> a - |a|^2 conj(b)");
        add_exact(rep, "moufang_1", residual_terms(ab * ca - (a * bc) * a), "(ab)(ca) = a(bc)a");
        add_exact(rep, "moufang_2", residual_terms(a * (b * ac) - aba * c), "a(b(ac)) = (aba)c");
        add_exact(rep, "moufang_3", residual_terms((ab * c) * b - a * (bc * b)), "((ab)c)b = a(bcb)");
        add_exact(rep, "norm_multiplicative", (ab.norm_sq() - na * b.norm_sq()).size(), "|ab|^2 = |a|^2 |b|^2");
        add_exact(rep, "associator_alternating_aab", residual_terms(associator(a, a, b)), "[a,a,b] = 0");
        add_exact(rep, "associator_alternating_aba", residual_terms(associator(a, b, a)), "[a,b,a] = 0");
        add_exact(rep, "associator_alternating_baa", residual_terms(associator(b, a, a)), "[b,a,a] = 0");
        add_exact(rep, "associator_skew", residual_terms(associator(a, b, c) + associator(b, a, c)),
                  "[a,b,c] = -[b,a,c]");
        add_exact(rep, "associator_conjugate_swap", residual_terms(associator(a, b, c) + associator(b.conj(), a.conj(), c)),
                  "[a,b,c] = -[conj(b),conj(a),c]");
        if (dim_value(d) <= 4) {
            add_exact(rep, "associative", residual_terms(associator(a, b, c)), "[a,b,c] = 0 below dimension 8");
        } else {
            using Q = Element<Rational>;
            Q assoc = associator(Q::basis(d, 1), Q::basis(d, 2), Q::basis(d, 4));
            rep.add("non_associative_witness", !assoc.is_zero(), "witness", detail::to_json(assoc),
                    "[e1,e2,e4] != 0");
        }
        if (dim_value(d) >= 2) {
            const auto& fixed = table(d);
            MultiplicationTable cd = cayley_dickson_recursive_table(d);
            BasisRelabeling m;
            if (dim_value(d) == 8) {
                m = basic_triple_relabeling(cd);
            } else {
                // Below dimension 8 the recursive basis is already the restricted one.
                m = {std::vector<int>(static_cast<std::size_t>(dim_value(d)), 1), {}};
                for (int i = 0; i < dim_value(d); ++i) m.index.push_back(i);
                if (dim_value(d) == 4) {
                    const auto& e = cd(1, 2);
                    m.sign[3] = e.sign;
                    m.index[3] = e.index;
                }
            }
            int bad = relabeling_mismatches(fixed, cd, m);
            nlohmann::json jm = nlohmann::json::array();
            for (int i = 0; i < dim_value(d); ++i) jm.push_back(m.sign[static_cast<std::size_t>(i)] * (m.index[static_cast<std::size_t>(i)] + 1));
            rep.add("cayley_dickson_recursion_agrees", bad == 0, "residual", bad,
                    "recursive doubling matches the octonion table after basic-triple relabeling",
                    "signed relabeling e_i -> sign*c_(|v|-1): " + jm.dump());
        }
    } else {
        NormWitness w = find_norm_witness(d, derive_seed(seed, 1));
        nlohmann::json j;
        if (w.found) {
            j = {{"a", detail::to_json(w.a)}, {"b", detail::to_json(w.b)}, {"norm_sq_ab", w.lhs.str()},
                 {"norm_sq_a_times_norm_sq_b", w.rhs.str()}};
        }
        rep.add("norm_multiplicativity_fails", w.found, "witness", j,
                "|ab| = |a||b| fails beyond dimension 8 (negative control)");
        std::size_t alt = residual_terms(associator(a, a, b));
        rep.add("alternativity_fails", alt != 0, "residual", alt,
                "[a,a,b] is not identically zero beyond dimension 8 (negative control)");
    }
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

}  // namespace hopf

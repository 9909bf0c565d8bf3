#include "dyndeg/certify.hpp"

#include <cstdlib>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace dyndeg {

unsigned resolve_jobs(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DYNDEG_JOBS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace {

// deterministic fan-out: results land by index, scheduling order irrelevant
template <typename F>
void parallel_for(unsigned jobs, size_t count, F&& body) {
    if (jobs <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    unsigned n = std::min<size_t>(jobs, count);
    std::vector<std::exception_ptr> errors(n);
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

const BigInt& default_lcm_floor() {
    // the displayed zero-free threshold; any target >= the computed Baker
    // bound is sound, and pinning the floor here keeps the modulus schedule
    // and the printed lcm values stable
    static const BigInt v = BigInt(7) * pow_ui(BigInt(10), 18);
    return v;
}

}  // namespace

SpectralClass classify_spectrum(const IntMat3& A) {
    SpectralClass out;
    out.char_poly = A.char_poly();
    out.disc = cubic_discriminant(out.char_poly);
    if (!cubic_irreducible(out.char_poly)) {
        out.reason = "characteristic polynomial is reducible";
        return out;
    }
    if (out.disc >= 0) {
        out.reason = "three real roots (nonnegative discriminant)";
        return out;
    }
    // one real root t and a conjugate pair xi with t |xi|^2 = +-1: the real
    // root dominates iff |t| > 1, the pair iff |t| < 1 (and then |xi| > 1)
    PolyZ prim = poly_primitive(out.char_poly);
    Rat bound(2);
    for (int i = 0; i < 3; ++i) bound = std::max(bound, Rat(abs(out.char_poly[i]) + 1));
    for (long bits = 32; bits <= 4096; bits *= 2) {
        Iv t = bisect_root(prim, -bound, bound, make_rat(1, 1) / Rat(BigInt(1) << bits));
        Iv ta = abs_iv(t);
        if (ta.lo > 1) {
            out.kind = SpectralKind::PerronReal;
            return out;
        }
        if (ta.hi < 1) {
            out.kind = SpectralKind::ComplexPairDominant;
            return out;
        }
    }
    out.reason = "real root not separated from the unit circle";
    return out;
}

ConeEvidence cone_condition(const IntMat3& A, const RunOptions& opts) {
    ConeEvidence ev;
    SpectralClass cls = classify_spectrum(A);
    ev.regime = cls.kind;
    // a single exact counterexample disproves the hypothesis outright
    for (const Vec3& v : cone_vectors()) {
        Vec3 cur = v;
        for (unsigned n = 1; n <= 32; ++n) {
            cur = A.apply(cur);
            if (!star_test(cur)) {
                ev.verdict = Verdict::Fail;
                std::ostringstream os;
                os << "star test fails at n = " << n << " for vector (" << v[0] << "," << v[1]
                   << "," << v[2] << ")";
                ev.detail = os.str();
                return ev;
            }
        }
    }
    if (cls.kind == SpectralKind::Unsupported) {
        ev.detail = "unsupported spectrum: " + cls.reason;
        return ev;
    }
    if (cls.kind == SpectralKind::PerronReal) {
        try {
            auto r = dominant_cone_cert(A, opts.eps);
            if (std::holds_alternative<ConeCertFailure>(r)) {
                const auto& f = std::get<ConeCertFailure>(r);
                ev.verdict = Verdict::Fail;
                std::ostringstream os;
                os << "star test fails at n = " << f.n << " for vector (" << f.v[0] << ","
                   << f.v[1] << "," << f.v[2] << ")";
                ev.detail = os.str();
            } else {
                ev.perron_certs = std::get<std::vector<VectorConeCert>>(std::move(r));
                ev.verdict = Verdict::Pass;
            }
        } catch (const MarginNotCertifiable& e) {
            ev.detail = e.what();
        }
        return ev;
    }

    // complex dominant pair: the 36 sequences, Baker bound, mod-m certificates
    auto F = KField::make(cls.char_poly);
    const auto& vecs = cone_vectors();
    const auto& funcs = cone_functionals();
    std::vector<SeqCoeffs> coeffs;
    coeffs.reserve(36);
    std::vector<LinRec3> recs;
    recs.reserve(36);
    for (const auto& v : vecs)
        for (const auto& w : funcs) {
            coeffs.push_back(coeffs_in_K(A, v, w, F));
            recs.push_back(seq_from_pair(A, v, w));
        }
    try {
        ev.baker = zero_free_bound_from_baker(coeffs, F, opts.eps);
    } catch (const std::domain_error& e) {
        ev.detail = e.what();
        return ev;
    }
    ev.lcm_target = opts.baker_target.value_or(
        std::max(ev.baker->threshold, default_lcm_floor()));

    ev.sequences.assign(36, SequenceEvidence{});
    unsigned jobs = resolve_jobs(opts.jobs);
    parallel_for(jobs, 36, [&](size_t i) {
        SequenceEvidence& se = ev.sequences[i];
        se.index = static_cast<unsigned>(i) + 1;
        se.rec = recs[i];
        se.zero_start = se.rec.init[0] == 0;
        if (se.zero_start) {
            LcmCert cert = certify_zero_only_at_start(se.rec, opts.moduli_lo, opts.moduli_hi,
                                                      ev.lcm_target, opts.step_cap);
            // the stop rule aims at the display target, but any lcm beyond the
            // Baker threshold already certifies the sequence
            se.ok = cert.reached || cert.lcm_periods > ev.baker->threshold;
            se.lcm_cert = std::move(cert);
        } else {
            se.never_zero_modulus =
                certify_never_zero(se.rec, opts.moduli_lo, opts.moduli_hi, opts.step_cap);
            se.ok = se.never_zero_modulus.has_value();
        }
    });
    unsigned failing = 0;
    for (const auto& se : ev.sequences)
        if (!se.ok && failing == 0) failing = se.index;
    if (failing == 0) {
        ev.verdict = Verdict::Pass;
    } else {
        ev.verdict = Verdict::Unknown;  // search exhausted, nothing disproved
        ev.detail = "no certificate found for sequence " + std::to_string(failing) +
                    " within the modulus range";
    }
    return ev;
}

KElem sigma(const Vec3& v, const Vec3& w, const IntMat3& A,
            const std::shared_ptr<const KField>& F) {
    SeqCoeffs c = coeffs_in_K(A, v, w, F);
    if (c.c1.is_zero())
        throw std::domain_error("sigma: degenerate pair, <w, pi(v)> = 0");
    KElem s = -(c.c1.conj() / c.c1);
    // unit-circle identity, exact
    if (!(s * s.conj() == F->one())) throw std::logic_error("sigma: |sigma| != 1");
    return s;
}

namespace {

bool parallel_vecs(const Vec3& a, const Vec3& b) {
    return a[0] * b[1] - a[1] * b[0] == 0 && a[1] * b[2] - a[2] * b[1] == 0 &&
           a[0] * b[2] - a[2] * b[0] == 0;
}

}  // namespace

Verdict TranscendenceReport::overall() const {
    Verdict all[] = {cond_irreducible, cond_pair_and_angle, cond_sigma_units, cond_ratio_units,
                     cone_condition};
    for (Verdict v : all)
        if (v == Verdict::Fail) return Verdict::Fail;
    for (Verdict v : all)
        if (v == Verdict::Unknown) return Verdict::Unknown;
    return Verdict::Pass;
}

TranscendenceReport transcendence_conditions(const IntMat3& A, const RunOptions& opts,
                                             const ConeEvidence* cone) {
    TranscendenceReport rep;
    SpectralClass cls = classify_spectrum(A);
    rep.cond_irreducible = cubic_irreducible(cls.char_poly) ? Verdict::Pass : Verdict::Fail;
    if (rep.cond_irreducible == Verdict::Fail) {
        rep.detail = "characteristic polynomial is reducible";
        return rep;
    }
    if (cls.kind != SpectralKind::ComplexPairDominant) {
        rep.cond_pair_and_angle = Verdict::Fail;
        rep.detail = "no dominant complex pair with |xi| > 1";
        return rep;
    }

    auto F = KField::make(cls.char_poly);
    CubicRoots roots = roots_in_field(F);
    KElem ratio = roots.xi_plus / roots.xi_minus;
    // two independent routes, required to agree: the Galois conjugate
    // xi1/theta has modulus |xi1|/|theta| != 1 iff |theta| != 1, certified by
    // the root enclosure; and the cyclotomic test on the minimal polynomial
    bool not_rou_cyclotomic = !is_root_of_unity(ratio);
    bool modulus_route = false;
    for (long bits = 32; bits <= 4096; bits *= 2) {
        Iv ta = abs_iv(F->theta_enclosure(bits));
        if (ta.hi < 1 || ta.lo > 1) {
            modulus_route = true;
            break;
        }
    }
    if (modulus_route != not_rou_cyclotomic)
        throw std::logic_error("transcendence: root-of-unity routes disagree");
    rep.cond_pair_and_angle = not_rou_cyclotomic ? Verdict::Pass : Verdict::Fail;

    // (iii) and (iv): unit checks over the 24 sigma values
    const auto& V = SupportSets::instance().V;
    std::vector<Vec3> wreps = {Vec3{1, 0, 0},  Vec3{0, 1, 0},  Vec3{0, 0, 1},
                               Vec3{1, -1, 0}, Vec3{0, 1, -1}, Vec3{-1, 0, 1}};
    std::vector<KElem> sigmas;
    std::vector<std::pair<Vec3, Vec3>> pairs;
    try {
        for (const auto& v : V)
            for (const auto& w : wreps) {
                KElem s = sigma(v, w, A, F);
                rep.sigma_checks.push_back(SigmaCheck{v, w, !is_unit(s)});
                sigmas.push_back(std::move(s));
                pairs.emplace_back(v, w);
            }
    } catch (const std::domain_error& e) {
        rep.cond_sigma_units = Verdict::Unknown;
        rep.detail = e.what();
        return rep;
    }
    bool all_nonunit = true;
    for (const auto& c : rep.sigma_checks) all_nonunit = all_nonunit && c.non_unit;
    rep.cond_sigma_units = all_nonunit ? Verdict::Pass : Verdict::Fail;

    bool ratios_ok = true;
    for (size_t i = 0; i < sigmas.size() && ratios_ok; ++i)
        for (size_t j = i + 1; j < sigmas.size() && ratios_ok; ++j) {
            bool exempt = parallel_vecs(pairs[i].first, pairs[j].first) &&
                          parallel_vecs(pairs[i].second, pairs[j].second);
            if (exempt) continue;
            if (is_unit(sigmas[i] / sigmas[j])) ratios_ok = false;
        }
    rep.cond_ratio_units = ratios_ok ? Verdict::Pass : Verdict::Fail;

    if (cone) {
        rep.cone_condition = cone->verdict;
        if (cone->verdict != Verdict::Pass && rep.detail.empty()) rep.detail = cone->detail;
    } else {
        ConeEvidence ev = cone_condition(A, opts);
        rep.cone_condition = ev.verdict;
        if (ev.verdict != Verdict::Pass && rep.detail.empty()) rep.detail = ev.detail;
    }
    return rep;
}

namespace {

// polynomial route for lambda_1(f_M) when M has a real Perron root: stabilized
// max-sequences, recurrence onset, generating-function reduction
Lambda2Result lambda_exact_for(const IntMat3& M, const RunOptions& opts) {
    Lambda2Result out;
    auto cone = dominant_cone_cert(M, opts.eps);
    if (std::holds_alternative<ConeCertFailure>(cone)) {
        const auto& f = std::get<ConeCertFailure>(cone);
        out.verdict = Verdict::Fail;
        out.detail = "cone condition fails at n = " + std::to_string(f.n);
        return out;
    }

    const auto& V = SupportSets::instance().V;
    unsigned max_analytic = 1;
    for (const auto& v : V) {
        out.argmax_certs.push_back(argmax_stabilize(M, v, opts.eps));
        max_analytic = std::max(max_analytic, out.argmax_certs.back().onset);
    }
    // the recurrence is a theorem for heads >= max onset + 3; supply enough
    // exact terms to bridge detection and the theorem range
    unsigned theorem_head = max_analytic + 3;
    size_t n_terms = std::max<size_t>({theorem_head + 2, 16});
    std::vector<BigInt> P(n_terms, BigInt(0));
    for (const auto& v : V) {
        std::vector<BigInt> q;
        Vec3 cur = v;
        for (size_t n = 1; n <= n_terms; ++n) {
            cur = M.apply(cur);
            q.push_back(support_max(cur));
        }
        out.max_sequences.push_back(q);
        for (size_t n = 0; n < n_terms; ++n) P[n] += q[n];
    }
    out.onset = eventual_rec_detect(P, M.recurrence(), static_cast<unsigned>(n_terms) - 6);
    out.polynomial = series_to_polynomial(P, M.recurrence(), out.onset);
    auto root = largest_real_root(out.polynomial, opts.eps);
    if (!root) {
        out.verdict = Verdict::Unknown;
        out.detail = "cleared polynomial has no real root";
        return out;
    }
    out.root = *root;
    out.verdict = Verdict::Pass;
    return out;
}

}  // namespace

Lambda2Result lambda2_exact(const IntMat3& A, const RunOptions& opts) {
    IntMat3 inv = A.inverse();
    SpectralClass cls = classify_spectrum(inv);
    if (cls.kind != SpectralKind::PerronReal) {
        Lambda2Result out;
        out.detail = "inverse matrix is not in the real-Perron regime";
        return out;
    }
    return lambda_exact_for(inv, opts);
}

HyperbolicityVerdict hyperbolicity(const Iv& l0, const Iv& l1, const Iv& l2, const Iv& l3) {
    std::array<const Iv*, 4> l = {&l0, &l1, &l2, &l3};
    for (int p = 0; p < 4; ++p) {
        bool dominates = true;
        for (int i = 0; i < 4; ++i)
            if (i != p) dominates = dominates && l[p]->lo > l[i]->hi;
        if (dominates) return HyperbolicityVerdict{p, false};
    }
    // certified none: every p is matched or beaten by some other index
    bool none_certified = true;
    for (int p = 0; p < 4; ++p) {
        bool beaten = false;
        for (int i = 0; i < 4; ++i)
            if (i != p && l[i]->lo >= l[p]->hi) beaten = true;
        none_certified = none_certified && beaten;
    }
    if (none_certified) return HyperbolicityVerdict{std::nullopt, false};
    return HyperbolicityVerdict{std::nullopt, true};
}

std::vector<Iv> product_profile(const Iv& mu, const Iv& nu, unsigned d) {
    if (d < 3) throw std::invalid_argument("product_profile: d >= 3 required");
    if (!(nu.lo > 1) || !(mu.lo > nu.hi))
        throw std::invalid_argument("product_profile: requires 1 < nu < mu certified");
    std::vector<Iv> out;
    out.reserve(d + 1);
    out.push_back(Iv(Rat(1)));
    for (unsigned i = 1; i + 2 <= d; ++i) out.push_back(mu);
    out.push_back(nu);
    out.push_back(Iv(Rat(1)));
    return out;
}

int Certificate::exit_code() const {
    bool fail = forward_cone.verdict == Verdict::Fail || inverse_cone.verdict == Verdict::Fail;
    if (transcendence && transcendence->overall() == Verdict::Fail) fail = true;
    if (lambda2 && lambda2->verdict == Verdict::Fail) fail = true;
    if (fail) return 1;
    if (hyperbolic.undecidable) return 2;
    if (!hyperbolic.p && !lambda1 && !lambda2) return 2;
    return 0;
}

Certificate full_report(const IntMat3& A, const std::vector<unsigned>& profile_dims,
                        const RunOptions& opts) {
    Certificate cert;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) cert.matrix[i][j] = A.at(i, j);
    cert.forward_class = classify_spectrum(A);
    IntMat3 inv = A.inverse();
    cert.inverse_class = classify_spectrum(inv);

    auto [psi1, degbound] = psi_bounds(A);
    Iv l1_for_verdict(Rat(1), Rat(degbound));  // unconditional bracket

    // forward side
    if (cert.forward_class.kind == SpectralKind::ComplexPairDominant) {
        cert.forward_cone = cone_condition(A, opts);
        cert.transcendence = transcendence_conditions(A, opts, &cert.forward_cone);
        ConeCertToken token = cert.forward_cone.token("forward cone certificate");
        cert.lambda1 = lambda1_enclosure(A, token, opts.eps,
                                         Lambda1Options{opts.series_start, 8, 32});
        cert.lambda1_conditional = !token.certified;
        if (token.certified) l1_for_verdict = *cert.lambda1;
    } else if (cert.forward_class.kind == SpectralKind::PerronReal) {
        Lambda2Result fwd = lambda_exact_for(A, opts);
        cert.forward_cone.regime = SpectralKind::PerronReal;
        cert.forward_cone.verdict = fwd.verdict;
        if (fwd.verdict == Verdict::Pass) {
            cert.lambda1 = fwd.root;
            l1_for_verdict = fwd.root;
        }
    } else {
        cert.forward_cone.detail = cert.forward_class.reason;
    }

    // inverse side: lambda_2 = lambda_1(f_{A^-1})
    Iv l2_for_verdict(Rat(1), Rat(build_fA(inv).forward.degree_bound()));
    if (cert.inverse_class.kind == SpectralKind::PerronReal) {
        cert.lambda2 = lambda2_exact(A, opts);
        cert.inverse_cone = cone_condition(inv, opts);
        if (cert.lambda2->verdict == Verdict::Pass) l2_for_verdict = cert.lambda2->root;
    } else if (cert.inverse_class.kind == SpectralKind::ComplexPairDominant) {
        cert.inverse_cone = cone_condition(inv, opts);
        Lambda2Result l2;
        ConeCertToken token = cert.inverse_cone.token("inverse cone certificate");
        l2.root = lambda1_enclosure(inv, token, opts.eps,
                                    Lambda1Options{opts.series_start, 8, 32});
        l2.verdict = token.certified ? Verdict::Pass : Verdict::Unknown;
        cert.lambda2 = std::move(l2);
        if (token.certified) l2_for_verdict = cert.lambda2->root;
    } else {
        cert.inverse_cone.detail = cert.inverse_class.reason;
    }

    cert.hyperbolic = hyperbolicity(cert.lambda0, l1_for_verdict, l2_for_verdict, cert.lambda3);

    for (unsigned d : profile_dims) {
        try {
            cert.profiles.emplace_back(d, product_profile(l1_for_verdict, l2_for_verdict, d));
        } catch (const std::invalid_argument&) {
            // profile preconditions not met; omitted rather than guessed
        }
    }
    return cert;
}

// --- serialization ---------------------------------------------------------

namespace {

using nlohmann::json;

json iv_json(const Iv& v) {
    return json{{"lo", rat_to_string(v.lo)}, {"hi", rat_to_string(v.hi)}};
}

const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "unknown";
    }
}

const char* kind_str(SpectralKind k) {
    switch (k) {
        case SpectralKind::PerronReal: return "perron_real";
        case SpectralKind::ComplexPairDominant: return "complex_pair_dominant";
        default: return "unsupported";
    }
}

json vec_json(const Vec3& v) {
    return json::array({v[0].get_str(), v[1].get_str(), v[2].get_str()});
}

json cone_json(const ConeEvidence& ev) {
    json j;
    j["verdict"] = verdict_str(ev.verdict);
    j["regime"] = kind_str(ev.regime);
    if (!ev.detail.empty()) j["detail"] = ev.detail;
    if (!ev.perron_certs.empty()) {
        json arr = json::array();
        for (const auto& c : ev.perron_certs) {
            arr.push_back(json{{"vector", vec_json(c.v)},
                               {"analytic_from", c.analytic_from},
                               {"bound", iv_json(c.bound_at_onset)}});
        }
        j["perron_certs"] = arr;
    }
    if (!ev.sequences.empty()) {
        json arr = json::array();
        for (const auto& se : ev.sequences) {
            json s{{"index", se.index}, {"zero_start", se.zero_start}, {"ok", se.ok}};
            json init = json::array();
            for (const auto& t : se.rec.init) init.push_back(t.get_str());
            s["init"] = init;
            if (se.never_zero_modulus) s["never_zero_modulus"] = *se.never_zero_modulus;
            if (se.lcm_cert) {
                s["lcm"] = se.lcm_cert->lcm_periods.get_str();
                s["moduli"] = se.lcm_cert->moduli_used;
            }
            arr.push_back(std::move(s));
        }
        j["sequences"] = arr;
        j["lcm_target"] = ev.lcm_target.get_str();
    }
    if (ev.baker) {
        j["baker"] = json{{"threshold", ev.baker->threshold.get_str()},
                          {"constant", iv_json(ev.baker->constant)},
                          {"slope", iv_json(ev.baker->slope)},
                          {"offset", iv_json(ev.baker->offset)},
                          {"log_xi1", iv_json(ev.baker->log_xi1)}};
    }
    return j;
}

}  // namespace

std::string certificate_to_json(const Certificate& c) {
    json j;
    j["meta"] = json{{"tool", "dyndeg"}, {"format", 1}};
    json m = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int jj = 0; jj < 3; ++jj) row.push_back(c.matrix[i][jj].get_str());
        m.push_back(row);
    }
    j["matrix"] = m;
    j["spectral_class"] =
        json{{"forward", kind_str(c.forward_class.kind)}, {"inverse", kind_str(c.inverse_class.kind)}};
    json lam;
    lam["l0"] = iv_json(c.lambda0);
    lam["l3"] = iv_json(c.lambda3);
    if (c.lambda1) {
        json l1 = iv_json(*c.lambda1);
        l1["conditional"] = c.lambda1_conditional;
        if (c.transcendence) {
            const auto& t = *c.transcendence;
            json tr{{"irreducible", verdict_str(t.cond_irreducible)},
                    {"pair_and_angle", verdict_str(t.cond_pair_and_angle)},
                    {"sigma_units", verdict_str(t.cond_sigma_units)},
                    {"ratio_units", verdict_str(t.cond_ratio_units)},
                    {"cone_condition", verdict_str(t.cone_condition)},
                    {"overall", verdict_str(t.overall())}};
            if (!t.detail.empty()) tr["detail"] = t.detail;
            l1["transcendence"] = tr;
        }
        lam["l1"] = l1;
    }
    if (c.lambda2) {
        json l2;
        if (!c.lambda2->polynomial.empty()) {
            json poly = json::array();
            for (const auto& coef : c.lambda2->polynomial) poly.push_back(coef.get_str());
            l2["polynomial"] = poly;
            l2["onset"] = c.lambda2->onset;
        }
        l2["root"] = iv_json(c.lambda2->root);
        l2["verdict"] = verdict_str(c.lambda2->verdict);
        lam["l2"] = l2;
    }
    j["lambda"] = lam;
    j["cone_evidence"] = json{{"forward", cone_json(c.forward_cone)},
                              {"inverse", cone_json(c.inverse_cone)}};
    if (c.hyperbolic.p)
        j["hyperbolicity"] = *c.hyperbolic.p;
    else
        j["hyperbolicity"] = c.hyperbolic.undecidable ? "undecidable" : "none";
    if (!c.profiles.empty()) {
        json ps = json::array();
        for (const auto& [d, prof] : c.profiles) {
            json arr = json::array();
            for (const auto& v : prof) arr.push_back(iv_json(v));
            ps.push_back(json{{"d", d}, {"degrees", arr}});
        }
        j["profiles"] = ps;
    }
    return j.dump(2) + "\n";
}

bool recheck(const Certificate& c, const IntMat3& A) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (c.matrix[i][j] != A.at(i, j)) return false;
    // stored mod-m certificates: re-cycle only the stored moduli
    for (const auto& se : c.forward_cone.sequences) {
        if (!se.ok) return false;
        if (se.never_zero_modulus) {
            ModCert mc = mod_cycle(se.rec, *se.never_zero_modulus);
            if (!mc.zero_positions.empty()) return false;
        } else if (se.lcm_cert) {
            BigInt l(1);
            for (unsigned long m : se.lcm_cert->moduli_used) {
                ModCert mc = mod_cycle(se.rec, m);
                if (mc.zero_positions.size() != 1 || mc.zero_positions[0] != 0) return false;
                l = lcm(l, BigInt(static_cast<unsigned long>(mc.period)));
            }
            const BigInt& required = c.forward_cone.baker ? c.forward_cone.baker->threshold
                                                          : c.forward_cone.lcm_target;
            if (l != se.lcm_cert->lcm_periods || !(l > required)) return false;
        } else {
            return false;
        }
    }
    // lambda_1 sign contract: exact partial sums against the stored bracket
    if (c.lambda1 && !c.lambda1_conditional) {
        auto psis = psi_prefix(A, 256);
        if (!(lambda1_partial_sum(psis, c.lambda1->lo) > 1)) return false;
        Rat s = lambda1_partial_sum(psis, c.lambda1->hi);
        Rat t = lambda1_tail_bound(A, 16, 257, c.lambda1->hi);
        if (!(s + t < 1)) return false;
    }
    // lambda_2 polynomial root bracket: sign change across the enclosure
    if (c.lambda2 && !c.lambda2->polynomial.empty()) {
        PolyQ p = poly_of(c.lambda2->polynomial);
        Rat plo = poly_eval(p, c.lambda2->root.lo), phi = poly_eval(p, c.lambda2->root.hi);
        if (sgn(plo) == sgn(phi) && sgn(plo) != 0) return false;
    }
    return true;
}

}  // namespace dyndeg

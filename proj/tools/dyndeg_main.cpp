#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "dyndeg/certify.hpp"

using namespace dyndeg;

namespace {

std::string iv_str(const Iv& v) {
    std::ostringstream os;
    double mid = v.mid().get_d(), w = v.width().get_d();
    os.precision(12);
    os << mid;
    if (w > 0) os << " (+-" << w / 2 << ")";
    return os.str();
}

std::string poly_str(const PolyZ& p) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = p.size(); i-- > 0;) {
        if (p[i] == 0) continue;
        BigInt c = p[i];
        if (!first) os << (c > 0 ? " + " : " - ");
        if (first && c < 0) os << "-";
        BigInt a = abs(c);
        first = false;
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) {
            os << "x";
            if (i >= 2) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Pass: return 0;
        case Verdict::Fail: return 1;
        default: return 2;
    }
}

struct Cli {
    std::string matrix_path;
    std::string eps_str = "1e-6";
    std::string moduli = "5..1999";
    unsigned long long step_cap = 10'000'000;
    std::string baker_target;
    unsigned jobs = 0;
    std::string out_path;
    std::string profile_d;
    std::string point_str;
    unsigned steps = 3;
    unsigned psi_n = 1;

    RunOptions options() const {
        RunOptions o;
        o.eps = rat_from_string(eps_str);
        if (o.eps <= 0) throw CLI::ValidationError("--eps must be positive");
        auto dots = moduli.find("..");
        if (dots == std::string::npos)
            throw CLI::ValidationError("--moduli must look like LO..HI");
        o.moduli_lo = std::stoul(moduli.substr(0, dots));
        o.moduli_hi = std::stoul(moduli.substr(dots + 2));
        if (o.moduli_lo > o.moduli_hi) throw CLI::ValidationError("--moduli range is descending");
        if (step_cap < 1000) throw CLI::ValidationError("--step-cap must be at least 1000");
        o.step_cap = step_cap;
        if (!baker_target.empty()) o.baker_target = BigInt(baker_target, 10);
        o.jobs = jobs;
        return o;
    }

    std::vector<unsigned> profile_dims() const {
        std::vector<unsigned> dims;
        std::stringstream ss(profile_d);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) dims.push_back(static_cast<unsigned>(std::stoul(tok)));
        return dims;
    }

    ProjPointQ point() const {
        std::array<BigInt, 4> c;
        std::stringstream ss(point_str);
        std::string tok;
        int i = 0;
        while (std::getline(ss, tok, ',')) {
            if (i >= 4) throw CLI::ValidationError("--point needs four comma-separated integers");
            c[i++] = BigInt(tok, 10);
        }
        if (i != 4) throw CLI::ValidationError("--point needs four comma-separated integers");
        return ProjPointQ::from_integers(c);
    }
};

void print_cone_summary(const ConeEvidence& ev) {
    std::cout << "cone condition: " << (ev.verdict == Verdict::Pass ? "PASS"
                                        : ev.verdict == Verdict::Fail ? "FAIL"
                                                                      : "UNKNOWN")
              << "\n";
    if (!ev.detail.empty()) std::cout << "  " << ev.detail << "\n";
    for (const auto& c : ev.perron_certs) {
        std::cout << "  vector (" << c.v[0] << "," << c.v[1] << "," << c.v[2]
                  << "): analytic for n >= " << c.analytic_from
                  << ", bound " << iv_str(c.bound_at_onset) << "\n";
    }
    if (!ev.sequences.empty()) {
        unsigned nz = 0, zs = 0;
        for (const auto& s : ev.sequences) (s.zero_start ? zs : nz) += s.ok ? 1 : 0;
        std::cout << "  sequences certified: " << nz << " never-zero, " << zs
                  << " zero-only-at-start (target " << ev.lcm_target.get_str() << ")\n";
        if (ev.baker)
            std::cout << "  Baker threshold: " << ev.baker->threshold.get_str() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified dynamical degrees of monomial-linear birational maps of P^3"};
    app.require_subcommand(1);
    Cli cli;

    auto add_common = [&](CLI::App* sub, bool needs_matrix = true) {
        if (needs_matrix)
            sub->add_option("matrix", cli.matrix_path, "matrix file (3x3 integers, # comments)")
                ->required();
        sub->add_option("--eps", cli.eps_str, "enclosure width target (rational or decimal)");
        sub->add_option("--moduli", cli.moduli, "modulus search range LO..HI");
        sub->add_option("--step-cap", cli.step_cap, "per-modulus cycle step cap");
        sub->add_option("--baker-target", cli.baker_target, "override the zero-free target");
        sub->add_option("--jobs", cli.jobs, "parallel workers (default: DYNDEG_JOBS or cores)");
        sub->add_option("--out", cli.out_path, "write the JSON certificate here");
    };

    auto* cmd_psi = app.add_subcommand("psi", "the degree functional Psi(A^n)");
    add_common(cmd_psi);
    cmd_psi->add_option("--n", cli.psi_n, "power of the matrix")->check(CLI::PositiveNumber);

    auto* cmd_degree = app.add_subcommand("degree", "monomial degree and composition bound");
    add_common(cmd_degree);

    auto* cmd_l1 = app.add_subcommand("lambda1", "first dynamical degree");
    add_common(cmd_l1);
    auto* cmd_l2 = app.add_subcommand("lambda2", "second dynamical degree via the inverse");
    add_common(cmd_l2);
    auto* cmd_cone = app.add_subcommand("cone-check", "certify the cone condition");
    add_common(cmd_cone);
    auto* cmd_tr = app.add_subcommand("transcendence", "check the transcendence hypotheses");
    add_common(cmd_tr);
    auto* cmd_report = app.add_subcommand("report", "full certificate");
    add_common(cmd_report);
    cmd_report->add_option("--profile-d", cli.profile_d,
                           "product-map dimensions, comma separated");
    auto* cmd_orbit = app.add_subcommand("orbit", "heights along an orbit");
    add_common(cmd_orbit);
    cmd_orbit->add_option("--point", cli.point_str, "projective point, e.g. 1,2,3,5")->required();
    cmd_orbit->add_option("--steps", cli.steps, "orbit length (heights grow very fast)");

    CLI11_PARSE(app, argc, argv);

    try {
        IntMat3 A = read_matrix_file(cli.matrix_path);
        RunOptions opts = cli.options();

        if (cmd_psi->parsed()) {
            std::cout << psi(A, cli.psi_n).get_str() << "\n";
            return 0;
        }
        if (cmd_degree->parsed()) {
            HomogMonomialMap h = homogenize_monomial(A);
            FAMaps maps = build_fA(A);
            std::cout << "deg(h_A) = " << h.degree.get_str() << "\n";
            std::cout << "deg(f_A) <= " << maps.forward.degree_bound().get_str() << "\n";
            return 0;
        }
        if (cmd_l1->parsed()) {
            SpectralClass cls = classify_spectrum(A);
            if (cls.kind == SpectralKind::PerronReal) {
                Lambda2Result r = lambda2_exact(A.inverse(), opts);  // f_A by the exact route
                if (r.verdict != Verdict::Pass) {
                    std::cout << "lambda1: " << r.detail << "\n";
                    return verdict_exit(r.verdict);
                }
                std::cout << "lambda1 is algebraic: root of " << poly_str(r.polynomial)
                          << "\nlambda1 = " << iv_str(r.root) << "\n";
                return 0;
            }
            if (cls.kind == SpectralKind::Unsupported) {
                std::cout << "unsupported spectrum: " << cls.reason << "\n";
                return 2;
            }
            ConeEvidence ev = cone_condition(A, opts);
            print_cone_summary(ev);
            Iv l1 = lambda1_enclosure(A, ev.token("cli"), opts.eps,
                                      Lambda1Options{opts.series_start, 8, 32});
            std::cout << "lambda1 = " << iv_str(l1)
                      << (ev.verdict == Verdict::Pass ? "" : "  [conditional on the cone condition]")
                      << "\n";
            return verdict_exit(ev.verdict);
        }
        if (cmd_l2->parsed()) {
            Lambda2Result r = lambda2_exact(A, opts);
            if (r.verdict == Verdict::Pass) {
                std::cout << "lambda2 is a root of " << poly_str(r.polynomial) << "\n";
                std::cout << "lambda2 = " << iv_str(r.root) << "\n";
                return 0;
            }
            std::cout << "lambda2: " << (r.detail.empty() ? "not available" : r.detail) << "\n";
            return verdict_exit(r.verdict);
        }
        if (cmd_cone->parsed()) {
            ConeEvidence ev = cone_condition(A, opts);
            print_cone_summary(ev);
            return verdict_exit(ev.verdict);
        }
        if (cmd_tr->parsed()) {
            TranscendenceReport rep = transcendence_conditions(A, opts);
            auto pr = [](const char* name, Verdict v) {
                std::cout << "  " << name << ": "
                          << (v == Verdict::Pass ? "PASS" : v == Verdict::Fail ? "FAIL" : "UNKNOWN")
                          << "\n";
            };
            pr("(i)   irreducible", rep.cond_irreducible);
            pr("(ii)  dominant pair, angle irrational", rep.cond_pair_and_angle);
            pr("(iii) sigma values outside U_K", rep.cond_sigma_units);
            pr("(iv)  sigma ratios outside U_K", rep.cond_ratio_units);
            pr("cone condition", rep.cone_condition);
            if (!rep.detail.empty()) std::cout << "  detail: " << rep.detail << "\n";
            Verdict overall = rep.overall();
            std::cout << "transcendence hypotheses: "
                      << (overall == Verdict::Pass
                              ? "PASS (transcendence follows by the cited criterion)"
                          : overall == Verdict::Fail ? "FAIL"
                                                     : "UNKNOWN")
                      << "\n";
            return verdict_exit(overall);
        }
        if (cmd_report->parsed()) {
            Certificate cert = full_report(A, cli.profile_dims(), opts);
            std::cout << "lambda0 = 1\n";
            if (cert.lambda1)
                std::cout << "lambda1 = " << iv_str(*cert.lambda1)
                          << (cert.lambda1_conditional ? "  [conditional on the cone condition]"
                                                       : "")
                          << "\n";
            if (cert.transcendence) {
                Verdict t = cert.transcendence->overall();
                std::cout << "lambda1 transcendence hypotheses: "
                          << (t == Verdict::Pass ? "PASS" : t == Verdict::Fail ? "FAIL" : "UNKNOWN")
                          << "\n";
            }
            if (cert.lambda2) {
                if (!cert.lambda2->polynomial.empty())
                    std::cout << "lambda2 root of " << poly_str(cert.lambda2->polynomial) << "\n";
                std::cout << "lambda2 = " << iv_str(cert.lambda2->root) << "\n";
            }
            std::cout << "lambda3 = 1\n";
            if (cert.hyperbolic.p)
                std::cout << "verdict: " << *cert.hyperbolic.p << "-cohomologically hyperbolic\n";
            else
                std::cout << "verdict: "
                          << (cert.hyperbolic.undecidable ? "undecidable with current enclosures"
                                                          : "not cohomologically hyperbolic")
                          << "\n";
            for (const auto& [d, prof] : cert.profiles) {
                std::cout << "profile d=" << d << ":";
                for (const auto& v : prof) std::cout << " " << iv_str(v);
                std::cout << "\n";
            }
            if (!cli.out_path.empty()) {
                std::ofstream out(cli.out_path, std::ios::binary);
                if (!out) throw std::invalid_argument("cannot write " + cli.out_path);
                out << certificate_to_json(cert);
            }
            return cert.exit_code();
        }
        if (cmd_orbit->parsed()) {
            FAMaps maps = build_fA(A);
            OrbitResult orb = orbit_heights(maps.forward, cli.point(), cli.steps);
            for (size_t k = 0; k < orb.heights.size(); ++k)
                std::cout << "h(f^" << k << " P) = " << iv_str(orb.heights[k]) << "\n";
            for (size_t k = 0; k < orb.growth.size(); ++k)
                std::cout << "h(f^" << k + 1 << " P)^(1/" << k + 1
                          << ") = " << iv_str(orb.growth[k]) << "\n";
            if (orb.failed_at) {
                std::cout << "orbit hit an indeterminate point (factor index " << *orb.failed_at
                          << ")\n";
                return 2;
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 3;
}

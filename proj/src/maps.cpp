#include "dyndeg/maps.hpp"

#include <fstream>
#include <sstream>

namespace dyndeg {

HomogMonomialMap homogenize_monomial(const IntMat3& A) {
    // affine coordinate i maps to prod_j (x_j/x_0)^{a_ij}; homogenize with
    // x_0-exponent -sum_j a_ij, then clear the common monomial factor by
    // subtracting the per-column minima
    std::array<std::array<BigInt, 4>, 4> e{};
    for (int i = 1; i <= 3; ++i) {
        BigInt rowsum(0);
        for (int j = 1; j <= 3; ++j) {
            e[i][j] = A.at(i - 1, j - 1);
            rowsum += e[i][j];
        }
        e[i][0] = -rowsum;
    }
    for (int j = 0; j < 4; ++j) {
        BigInt mn = e[0][j];
        for (int i = 1; i < 4; ++i) mn = std::min(mn, e[i][j]);
        for (int i = 0; i < 4; ++i) e[i][j] -= mn;
    }
    BigInt degree(0);
    for (int j = 0; j < 4; ++j) degree += e[0][j];
    for (int i = 1; i < 4; ++i) {
        BigInt s(0);
        for (int j = 0; j < 4; ++j) s += e[i][j];
        if (s != degree) throw std::logic_error("homogenize_monomial: unequal row sums");
    }
    return HomogMonomialMap{e, degree};
}

HomogMonomialMap cremona_involution() {
    std::array<std::array<BigInt, 3>, 3> minus_id{};
    for (int i = 0; i < 3; ++i) minus_id[i][i] = -1;
    return homogenize_monomial(IntMat3(minus_id));
}

ProjPointQ ProjPointQ::from_integers(std::array<BigInt, 4> coords) {
    BigInt g(0);
    for (const auto& c : coords) g = gcd(g, c);
    if (g == 0) throw std::invalid_argument("projective point with all coordinates zero");
    for (auto& c : coords) c /= g;
    for (const auto& c : coords) {
        if (c == 0) continue;
        if (c < 0)
            for (auto& cc : coords) cc = -cc;
        break;
    }
    return ProjPointQ{std::move(coords)};
}

ProjPointQ ProjPointQ::from_rationals(const std::array<Rat, 4>& coords) {
    BigInt den(1);
    for (const auto& c : coords) den = lcm(den, c.get_den());
    std::array<BigInt, 4> ints;
    for (int i = 0; i < 4; ++i) ints[i] = coords[i].get_num() * (den / coords[i].get_den());
    return from_integers(std::move(ints));
}

BigInt BirationalComposition::degree_bound() const {
    BigInt d(1);
    for (const auto& f : factors)
        if (const auto* m = std::get_if<MonomialFactor>(&f)) d *= m->m.degree;
    return d;
}

FAMaps build_fA(const IntMat3& A) {
    const Mat4Q& B = matrix_B();
    Mat4Q Binv = B.inverse();
    HomogMonomialMap hA = homogenize_monomial(A);
    HomogMonomialMap hAinv = homogenize_monomial(A.inverse());
    HomogMonomialMap cremona = cremona_involution();

    BirationalComposition forward{{LinearFactor{Binv}, MonomialFactor{cremona}, LinearFactor{B},
                                   MonomialFactor{hA}}};
    BirationalComposition inverse{{MonomialFactor{hAinv}, LinearFactor{Binv},
                                   MonomialFactor{cremona}, LinearFactor{B}}};
    BirationalComposition conjugated{{LinearFactor{Binv}, MonomialFactor{cremona},
                                      LinearFactor{B}, MonomialFactor{hAinv}}};
    return FAMaps{std::move(forward), std::move(inverse), std::move(conjugated)};
}

namespace {

std::variant<ProjPointQ, IndeterminatePoint> apply_factor(const Factor& f, const ProjPointQ& p,
                                                          size_t index) {
    if (const auto* lin = std::get_if<LinearFactor>(&f)) {
        std::array<Rat, 4> v;
        for (int i = 0; i < 4; ++i) v[i] = Rat(p.x[i]);
        std::array<Rat, 4> img = lin->m.apply(v);
        bool all_zero = true;
        for (const auto& c : img) all_zero = all_zero && c == 0;
        if (all_zero) return IndeterminatePoint{index, "linear factor produced the zero vector"};
        return ProjPointQ::from_rationals(img);
    }
    const auto& mono = std::get<MonomialFactor>(f).m;
    for (int j = 0; j < 4; ++j) {
        if (p.x[j] != 0) continue;
        for (int i = 0; i < 4; ++i)
            if (mono.expo[i][j] > 0)
                return IndeterminatePoint{
                    index, "monomial factor needs coordinate " + std::to_string(j) +
                               " which vanishes"};
    }
    std::array<BigInt, 4> img;
    for (int i = 0; i < 4; ++i) {
        BigInt acc(1);
        for (int j = 0; j < 4; ++j) {
            if (mono.expo[i][j] == 0) continue;
            if (!mono.expo[i][j].fits_ulong_p())
                throw std::overflow_error("monomial exponent too large to evaluate");
            acc *= pow_ui(p.x[j], mono.expo[i][j].get_ui());
        }
        img[i] = acc;
    }
    bool all_zero = true;
    for (const auto& c : img) all_zero = all_zero && c == 0;
    if (all_zero) return IndeterminatePoint{index, "monomial factor produced the zero vector"};
    return ProjPointQ::from_integers(std::move(img));
}

}  // namespace

std::variant<ProjPointQ, IndeterminatePoint> evaluate(const BirationalComposition& c,
                                                      const ProjPointQ& p) {
    ProjPointQ cur = p;
    for (size_t k = c.factors.size(); k-- > 0;) {
        auto r = apply_factor(c.factors[k], cur, k);
        if (std::holds_alternative<IndeterminatePoint>(r))
            return std::get<IndeterminatePoint>(r);
        cur = std::get<ProjPointQ>(std::move(r));
    }
    return cur;
}

Iv weil_height(const ProjPointQ& p, long bits) {
    BigInt m(0);
    for (const auto& c : p.x) m = std::max(m, abs(c));
    if (m == 1) return Iv(Rat(0));
    return log_point(Rat(m), bits);
}

OrbitResult orbit_heights(const BirationalComposition& c, const ProjPointQ& p, unsigned n_max) {
    OrbitResult out;
    out.heights.push_back(weil_height(p));
    ProjPointQ cur = p;
    for (unsigned k = 1; k <= n_max; ++k) {
        auto r = evaluate(c, cur);
        if (std::holds_alternative<IndeterminatePoint>(r)) {
            out.failed_at = std::get<IndeterminatePoint>(r).factor_index;
            return out;
        }
        cur = std::get<ProjPointQ>(std::move(r));
        Iv h = weil_height(cur);
        out.heights.push_back(h);
        if (h.lo > 0)
            out.growth.push_back(nth_root_iv(h, k, 64));
        else
            out.growth.push_back(Iv(Rat(0), nth_root_iv(Iv(Rat(0), h.hi), k, 64).hi));
    }
    return out;
}

IntMat3 parse_matrix_text(const std::string& text) {
    std::istringstream in(text);
    std::array<std::array<BigInt, 3>, 3> e;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        std::vector<std::string> toks;
        while (ls >> tok) toks.push_back(tok);
        if (toks.empty()) continue;
        if (row >= 3 || toks.size() != 3)
            throw std::invalid_argument("matrix file must have three rows of three integers");
        for (int j = 0; j < 3; ++j) {
            try {
                e[row][j] = BigInt(toks[j], 10);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("bad integer in matrix file: " + toks[j]);
            }
        }
        ++row;
    }
    if (row != 3) throw std::invalid_argument("matrix file must have three rows of three integers");
    return IntMat3(e);
}

IntMat3 read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_matrix_text(buf.str());
}

}  // namespace dyndeg

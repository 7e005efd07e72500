#include "fgs/pathsum.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fgs {

namespace {

constexpr int kMaxPathVars = 63;
constexpr int kMaxPipelineVars = 26;

BigInt bigint_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    BigInt r = BigInt(uint64_t(u >> 64));
    r <<= 64;
    r += uint64_t(u);
    return neg ? -r : r;
}

void zeta_transform(std::vector<uint64_t>& f, int w) {
    for (int b = 0; b < w; ++b) {
        uint64_t bit = uint64_t(1) << b;
        for (uint64_t m = 0; m < f.size(); ++m)
            if (m & bit) f[m] += f[m ^ bit];
    }
}

void mobius_transform(std::vector<uint64_t>& f, int w) {
    for (int b = 0; b < w; ++b) {
        uint64_t bit = uint64_t(1) << b;
        for (uint64_t m = 0; m < f.size(); ++m)
            if (m & bit) f[m] -= f[m ^ bit];
    }
}

}  // namespace

int64_t PhasePolynomialMod8::eval_integer(uint64_t assignment) const {
    int64_t val = constant;
    for (int i = 0; i < v; ++i) {
        if (!(assignment >> i & 1)) continue;
        val += linear[i];
        val += 4 * std::popcount(quad_rows[i] & assignment);
    }
    return val;
}

int IntPolynomial::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms)
        if (c != 0) d = std::max(d, std::popcount(m));
    return d;
}

BigInt IntPolynomial::eval(uint64_t assignment) const {
    BigInt v = 0;
    for (const auto& [m, c] : terms)
        if ((m & ~assignment) == 0) v += c;
    return v;
}

BigInt UnivariatePolynomial::eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::complex<double> CyclotomicAmplitude::to_complex() const {
    const std::complex<double> w = std::polar(1.0, std::numbers::pi / 4);
    std::complex<double> z = double(a0) + double(a1) * w + double(a2) * (w * w) +
                             double(a3) * (w * w * w);
    return z * std::pow(2.0, -half_exponent / 2.0);
}

PhasePolynomialMod8 extract_phase_polynomial(const QuantumCircuit& qc, const std::string& a,
                                             const std::string& b) {
    if (static_cast<int>(a.size()) != qc.width || static_cast<int>(b.size()) != qc.width)
        throw std::invalid_argument("basis string length must equal circuit width");
    int h = qc.h_count();
    if (h > kMaxPathVars) throw std::invalid_argument("too many H gates for the path sum");

    // Wire value is a constant or a bare path variable; {H,T,CZ} never mixes
    // variables on a wire.
    struct Wire {
        int var = -1;
        uint8_t c = 0;
    };
    std::vector<Wire> wire(qc.width);
    for (int q = 0; q < qc.width; ++q) wire[q].c = uint8_t(b[q] - '0');

    std::vector<int> alpha(h, 0);
    std::vector<uint64_t> qsym(h, 0);  // symmetric coupling rows
    int beta = 0;
    int nvars = 0;

    auto toggle = [&](int u, int w) {
        qsym[u] ^= uint64_t(1) << w;
        qsym[w] ^= uint64_t(1) << u;
    };

    for (const auto& g : qc.gates) {
        switch (g.kind) {
            case QKind::H: {
                int fresh = nvars++;
                Wire& ws = wire[g.target];
                if (ws.var < 0)
                    alpha[fresh] += 4 * ws.c;
                else
                    toggle(ws.var, fresh);
                ws = Wire{fresh, 0};
                break;
            }
            case QKind::T: {
                const Wire& ws = wire[g.target];
                if (ws.var < 0)
                    beta += ws.c;
                else
                    alpha[ws.var] += 1;
                break;
            }
            case QKind::CZ: {
                const Wire& e = wire[g.c1];
                const Wire& f = wire[g.target];
                if (e.var < 0 && f.var < 0) {
                    beta += 4 * e.c * f.c;
                } else if (e.var < 0) {
                    alpha[f.var] += 4 * e.c;
                } else if (f.var < 0) {
                    alpha[e.var] += 4 * f.c;
                } else if (e.var == f.var) {
                    alpha[e.var] += 4;
                } else {
                    toggle(e.var, f.var);
                }
                break;
            }
            default:
                throw std::invalid_argument(std::string("path-sum extraction needs {H,T,CZ}; found ") +
                                            qkind_name(g.kind));
        }
    }

    // Boundary constraints: constants must match a; final wire variables are
    // pinned to a and substituted away.
    bool inconsistent = false;
    std::vector<int8_t> pinned(nvars, -1);
    for (int q = 0; q < qc.width; ++q) {
        uint8_t aq = uint8_t(a[q] - '0');
        const Wire& ws = wire[q];
        if (ws.var < 0) {
            if (ws.c != aq) inconsistent = true;
            continue;
        }
        int u = ws.var;
        pinned[u] = int8_t(aq);
        if (aq) {
            beta += alpha[u];
            uint64_t row = qsym[u];
            while (row) {
                int w = std::countr_zero(row);
                row &= row - 1;
                alpha[w] += 4;
            }
        }
        // Remove u from all couplings.
        uint64_t row = qsym[u];
        while (row) {
            int w = std::countr_zero(row);
            row &= row - 1;
            qsym[w] &= ~(uint64_t(1) << u);
        }
        qsym[u] = 0;
        alpha[u] = 0;
    }

    std::vector<int> remap(nvars, -1);
    int v = 0;
    for (int i = 0; i < nvars; ++i)
        if (pinned[i] < 0) remap[i] = v++;

    PhasePolynomialMod8 p;
    p.v = v;
    p.scale_exponent = h;
    p.inconsistent = inconsistent;
    p.constant = uint8_t(((beta % 8) + 8) % 8);
    p.linear.assign(v, 0);
    p.quad_rows.assign(v, 0);
    for (int i = 0; i < nvars; ++i) {
        if (remap[i] < 0) continue;
        p.linear[remap[i]] = uint8_t(((alpha[i] % 8) + 8) % 8);
        uint64_t row = qsym[i];
        while (row) {
            int w = std::countr_zero(row);
            row &= row - 1;
            if (remap[w] > remap[i]) p.quad_rows[remap[i]] |= uint64_t(1) << remap[w];
        }
    }
    return p;
}

namespace {

// Symmetrized coupling rows for incremental evaluation walks.
std::vector<uint64_t> symmetric_rows(const PhasePolynomialMod8& p) {
    std::vector<uint64_t> rows(p.v, 0);
    for (int i = 0; i < p.v; ++i) {
        uint64_t r = p.quad_rows[i];
        while (r) {
            int j = std::countr_zero(r);
            r &= r - 1;
            rows[i] |= uint64_t(1) << j;
            rows[j] |= uint64_t(1) << i;
        }
    }
    return rows;
}

// Visits every assignment in Gray-code order, reporting (mask, p(mask)).
template <typename F>
void walk_values(const PhasePolynomialMod8& p, const F& visit) {
    auto rows = symmetric_rows(p);
    uint64_t mask = 0;
    int64_t val = p.constant;
    visit(mask, val);
    uint64_t total = uint64_t(1) << p.v;
    for (uint64_t s = 1; s < total; ++s) {
        int bit = std::countr_zero(s);
        uint64_t bm = uint64_t(1) << bit;
        bool added = !(mask & bm);
        mask ^= bm;
        int64_t delta = p.linear[bit] + 4 * std::popcount(rows[bit] & (mask & ~bm));
        val += added ? delta : -delta;
        visit(mask, val);
    }
}

}  // namespace

CyclotomicAmplitude direct_sum(const PhasePolynomialMod8& p) {
    CyclotomicAmplitude amp;
    amp.half_exponent = p.scale_exponent;
    if (p.inconsistent) return amp;
    if (p.v > 30) throw std::invalid_argument("direct sum limited to v <= 30");
    std::array<int64_t, 8> counts{};
    walk_values(p, [&](uint64_t, int64_t val) { ++counts[val & 7]; });
    amp.a0 = counts[0] - counts[4];
    amp.a1 = counts[1] - counts[5];
    amp.a2 = counts[2] - counts[6];
    amp.a3 = counts[3] - counts[7];
    return amp;
}

BigInt indicator_q_scalar(int64_t y) {
    BigInt yy = y;
    BigInt c1 = yy;
    BigInt c2 = yy * (yy - 1) / 2;
    BigInt c4 = yy * (yy - 1) * (yy - 2) * (yy - 3) / 24;
    return (1 - c1) * (1 - c2) * (1 - c4);
}

namespace {

__int128 indicator_q_i128(int64_t y) {
    __int128 yy = y;
    __int128 c1 = yy;
    __int128 c2 = yy * (yy - 1) / 2;
    __int128 c4 = yy * (yy - 1) * (yy - 2) * (yy - 3) / 24;
    return (1 - c1) * (1 - c2) * (1 - c4);
}

}  // namespace

IntPolynomial indicator_poly(const PhasePolynomialMod8& p, int j) {
    if (j < 0 || j > 7) throw std::invalid_argument("j must be in 0..7");
    if (p.v > kMaxPipelineVars) throw std::invalid_argument("indicator limited to v <= 26");
    // Shift the argument nonnegative: p(x) >= 0 as stored, so 8B >= j works.
    int64_t shift = 8 * ((j + 7) / 8) - j;

    // Values of q(p(x) - j + 8B) on the cube, then a Moebius transform gives
    // the coefficients of the unique multilinear interpolant, which is the
    // multilinear reduction of the composition.
    std::vector<__int128> vals(uint64_t(1) << p.v);
    walk_values(p, [&](uint64_t mask, int64_t val) { vals[mask] = indicator_q_i128(val + shift); });
    for (int b = 0; b < p.v; ++b) {
        uint64_t bit = uint64_t(1) << b;
        for (uint64_t m = 0; m < vals.size(); ++m)
            if (m & bit) vals[m] -= vals[m ^ bit];
    }

    IntPolynomial out;
    out.vars = p.v;
    for (uint64_t m = 0; m < vals.size(); ++m)
        if (vals[m] != 0) out.terms.emplace(m, bigint_from_i128(vals[m]));
    return out;
}

UnivariatePolynomial mod_amplifier(int k) {
    if (k < 1) throw std::invalid_argument("amplifier needs k >= 1");
    // r_k(x) = x^k * sum_{j=0}^{k-1} C(k-1+j, j) (1-x)^j
    std::vector<BigInt> acc(k, 0);
    BigInt ckj = 1;  // C(k-1+j, j), starting at j = 0
    for (int j = 0; j < k; ++j) {
        if (j > 0) ckj = ckj * (k - 1 + j) / j;
        BigInt binom = 1;  // C(j, i)
        for (int i = 0; i <= j; ++i) {
            if (i > 0) binom = binom * (j - i + 1) / i;
            BigInt term = ckj * binom;
            acc[i] += (i % 2 == 0) ? term : -term;
        }
    }
    UnivariatePolynomial r;
    r.coeffs.assign(2 * k, 0);
    for (int i = 0; i < k; ++i) r.coeffs[k + i] = acc[i];
    return r;
}

IntPolynomial partial_sum(const IntPolynomial& p_j, int k) {
    int v = p_j.vars;
    if (k < 1 || k >= v) throw std::invalid_argument("split k must satisfy 1 <= k < v");
    int w = v - k;
    if (w > kMaxPipelineVars) throw std::invalid_argument("partial sum limited to v-k <= 26");

    // All composition arithmetic runs in Z/2^{k+1}: reduction mod 2^{k+1}
    // commutes with +/* and only s mod 2^{k+1} is ever used (machine words
    // wrap mod 2^64, a multiple of 2^{k+1}).
    const uint64_t modmask = (uint64_t(1) << (k + 1)) - 1;
    auto residue = [&](const BigInt& c) {
        BigInt r = c % (int64_t(1) << (k + 1));
        if (r < 0) r += int64_t(1) << (k + 1);
        return r.convert_to<uint64_t>();
    };

    std::vector<std::pair<uint64_t, uint64_t>> terms;
    terms.reserve(p_j.terms.size());
    for (const auto& [m, c] : p_j.terms) {
        uint64_t cc = residue(c);
        if (cc) terms.emplace_back(m, cc);
    }

    UnivariatePolynomial r = mod_amplifier(k + 1);
    std::vector<uint64_t> rc(r.coeffs.size());
    for (size_t i = 0; i < r.coeffs.size(); ++i) rc[i] = residue(r.coeffs[i]);
    int d = static_cast<int>(rc.size()) - 1;

    const uint64_t ymask = (uint64_t(1) << w) - 1;
    std::vector<uint64_t> s_dense(uint64_t(1) << w, 0);
    std::vector<uint64_t> pz(uint64_t(1) << w), acc(uint64_t(1) << w);
    for (uint64_t z = 0; z < (uint64_t(1) << k); ++z) {
        std::fill(pz.begin(), pz.end(), 0);
        for (const auto& [m, cc] : terms) {
            uint64_t zpart = m >> w;
            if ((zpart & ~z) == 0) pz[m & ymask] += cc;
        }
        zeta_transform(pz, w);
        std::fill(acc.begin(), acc.end(), 0);
        acc[0] = rc[d];
        for (int i = d - 1; i >= 0; --i) {
            zeta_transform(acc, w);
            for (uint64_t m = 0; m < acc.size(); ++m) acc[m] *= pz[m];
            mobius_transform(acc, w);
            acc[0] += rc[i];
        }
        for (uint64_t m = 0; m < acc.size(); ++m) s_dense[m] += acc[m];
    }

    IntPolynomial s;
    s.vars = w;
    for (uint64_t m = 0; m < s_dense.size(); ++m) {
        uint64_t c = s_dense[m] & modmask;
        if (c) s.terms.emplace(m, BigInt(c));
    }
    return s;
}

std::vector<uint64_t> evaluate_all(const IntPolynomial& poly, uint64_t modulus) {
    int w = poly.vars;
    if (w > kMaxPipelineVars) throw std::invalid_argument("evaluate_all limited to w <= 26");
    if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
    std::vector<uint64_t> table(uint64_t(1) << w, 0);
    BigInt mod = modulus;
    for (const auto& [m, c] : poly.terms) {
        BigInt r = c % mod;
        if (r < 0) r += mod;
        // Variable i maps to table-index bit w-1-i (big-endian assignments).
        uint64_t idx = 0;
        uint64_t mm = m;
        while (mm) {
            int i = std::countr_zero(mm);
            mm &= mm - 1;
            idx |= uint64_t(1) << (w - 1 - i);
        }
        table[idx] = (table[idx] + r.convert_to<uint64_t>()) % modulus;
    }
    for (int b = 0; b < w; ++b) {
        uint64_t bit = uint64_t(1) << b;
        for (uint64_t m = 0; m < table.size(); ++m)
            if (m & bit) table[m] = (table[m] + table[m ^ bit]) % modulus;
    }
    return table;
}

std::array<int64_t, 8> count_roots_mod8(const PhasePolynomialMod8& p, int k,
                                        PipelineStats* stats) {
    if (k < 1 || k >= p.v) throw std::invalid_argument("split k must satisfy 1 <= k < v");
    std::array<int64_t, 8> counts{};
    const int64_t cap = int64_t(1) << k;
    for (int j = 0; j < 8; ++j) {
        IntPolynomial pj = indicator_poly(p, j);
        IntPolynomial s = partial_sum(pj, k);
        if (stats)
            stats->max_partial_sum_terms =
                std::max<uint64_t>(stats->max_partial_sum_terms, s.terms.size());
        auto table = evaluate_all(s, uint64_t(1) << (k + 1));
        for (uint64_t t : table) {
            if (int64_t(t) > cap)
                throw std::logic_error("partial-sum residue exceeds the count range");
            counts[j] += int64_t(t);
        }
    }
    int64_t total = 0;
    for (int64_t c : counts) total += c;
    if (total != int64_t(1) << p.v)
        throw std::logic_error("count conservation violated: sum N_j != 2^v");
    return counts;
}

CyclotomicAmplitude counting_sum(const PhasePolynomialMod8& p, int k, PipelineStats* stats) {
    auto n = count_roots_mod8(p, k, stats);
    CyclotomicAmplitude amp;
    amp.half_exponent = p.scale_exponent;
    amp.a0 = n[0] - n[4];
    amp.a1 = n[1] - n[5];
    amp.a2 = n[2] - n[6];
    amp.a3 = n[3] - n[7];
    return amp;
}

int choose_split_k(int v) {
    int k = std::max(1, int(std::floor(0.015035 * v)));
    return std::min(k, v - 1);
}

PathsumReport pathsum_report(const QuantumCircuit& qc, const std::string& a,
                             const std::string& b) {
    PathsumReport rep;
    PhasePolynomialMod8 p = extract_phase_polynomial(qc, a, b);
    rep.v = p.v;
    if (p.inconsistent) {
        rep.inconsistent = true;
        rep.amp.half_exponent = p.scale_exponent;
        return rep;
    }
    if (p.v < 2 || p.v > kMaxPipelineVars) {
        if (p.v > 30)
            throw std::invalid_argument("path-sum variable count v=" + std::to_string(p.v) +
                                        " exceeds the exact engines (direct <= 30, counting <= " +
                                        std::to_string(kMaxPipelineVars) + ")");
        rep.fallback = true;
        rep.amp = direct_sum(p);
        rep.amp.via_fallback = true;
        return rep;
    }
    rep.k = choose_split_k(p.v);
    PipelineStats stats;
    rep.amp = counting_sum(p, rep.k, &stats);
    rep.term_count = stats.max_partial_sum_terms;
    return rep;
}

CyclotomicAmplitude amplitude_via_counting(const QuantumCircuit& qc, const std::string& a,
                                           const std::string& b) {
    return pathsum_report(qc, a, b).amp;
}

PhasePolynomialMod8 random_phase_poly(std::mt19937_64& rng, int v) {
    PhasePolynomialMod8 p;
    p.v = v;
    p.scale_exponent = v;
    p.constant = uint8_t(rng() & 7);
    p.linear.resize(v);
    p.quad_rows.assign(v, 0);
    for (int i = 0; i < v; ++i) p.linear[i] = uint8_t(rng() & 7);
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j)
            if (rng() & 1) p.quad_rows[i] |= uint64_t(1) << j;
    return p;
}

}  // namespace fgs

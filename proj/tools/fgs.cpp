#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fgs/instance_io.hpp"
#include "fgs/pathsum.hpp"
#include "fgs/verify.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace fgs;

// Exit codes: 0 ok, 2 parse error, 3 enumeration cap, 4 precondition, 5
// verification failure.
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitPrecondition = 4;
constexpr int kExitVerify = 5;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct SourceFunction {
    bool is_cnf = false;
    CnfFormula cnf;
    BooleanCircuit circuit;
};

SourceFunction load_source(const std::string& cnf_path, const std::string& circuit_path) {
    if (cnf_path.empty() == circuit_path.empty())
        throw std::invalid_argument("exactly one of --cnf / --circuit is required");
    SourceFunction src;
    if (!cnf_path.empty()) {
        src.is_cnf = true;
        src.cnf = parse_dimacs(slurp(cnf_path));
    } else {
        src.circuit = parse_circuit_text(slurp(circuit_path));
    }
    return src;
}

ordered_json verify_report_json(const VerifyReport& rep) {
    ordered_json j;
    j["instance_type"] = rep.instance_type;
    if (rep.n >= 0) j["n"] = rep.n;
    if (rep.xi >= 0) j["xi"] = rep.xi;
    if (rep.t >= 0) j["t"] = rep.t;
    if (rep.h >= 0) j["h"] = rep.h;
    if (rep.has_formula)
        j["formula_value"] = ordered_json{{"num", rep.formula.num_string()},
                                          {"den", rep.formula.den_string()},
                                          {"value", rep.formula.value()}};
    else
        j["formula_value"] = rep.formula_value;
    j["oracle_value"] = rep.oracle_value;
    j["abs_diff"] = rep.abs_diff;
    j["pass"] = rep.pass;
    j["timing_ms"] = rep.timing_ms;
    return j;
}

Instance compile_target(const SourceFunction& src, const std::string& target) {
    auto need_cnf = [&]() -> const CnfFormula& {
        if (!src.is_cnf) throw std::invalid_argument("target requires --cnf input");
        return src.cnf;
    };
    auto as_circuit = [&]() {
        return src.is_cnf ? lower_to_circuit(src.cnf) : src.circuit;
    };
    if (target == "reversible")
        return src.is_cnf ? compile_cnf_counter(src.cnf) : compile_boolean_naive(src.circuit);
    if (target == "dqc1") return embed_dqc1(build_gap_core(as_circuit()));
    if (target == "hc1q") return build_hc1q(as_circuit());
    if (target == "clifford-t-sharp") return build_cliffordt_sharp(need_cnf());
    if (target == "clifford-t-gap") return build_cliffordt_gap(need_cnf());
    if (target == "h-count") return build_hcount_gap(as_circuit());
    if (target == "sharp-marginal") return build_sharp_marginal(as_circuit());
    throw std::invalid_argument("unknown target '" + target + "'");
}

ordered_json instance_header(const Instance& inst) {
    ordered_json full = ordered_json::parse(instance_to_json(inst));
    ordered_json header;
    for (const char* key : {"type", "n", "xi", "t", "h", "N", "formula", "accept_outcome"})
        if (full.contains(key)) header[key] = full[key];
    return header;
}

int cmd_count(const std::string& cnf_path, const std::string& circuit_path,
              const std::string& mode) {
    SourceFunction src = load_source(cnf_path, circuit_path);
    ordered_json j;
    j["mode"] = mode;
    if (mode == "unique-gap") {
        BooleanCircuit f = src.is_cnf ? lower_to_circuit(src.cnf) : src.circuit;
        BooleanCircuit g = unique_gap_reduction(f);
        CountReport rep = count(g);
        j["source_n"] = f.n;
        j["n"] = rep.n;
        j["sharp"] = rep.sharp;
        j["gap"] = rep.gap;
    } else if (mode == "sharp" || mode == "gap") {
        CountReport rep = src.is_cnf ? count(src.cnf) : count(src.circuit);
        j["n"] = rep.n;
        j["sharp"] = rep.sharp;
        j["gap"] = rep.gap;
    } else {
        throw std::invalid_argument("unknown mode '" + mode + "'");
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_compile(const std::string& cnf_path, const std::string& circuit_path,
                const std::string& target, const std::string& out_path) {
    SourceFunction src = load_source(cnf_path, circuit_path);
    Instance inst = compile_target(src, target);
    std::string payload = instance_to_json(inst);
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write " + out_path);
        out << payload;
        std::cout << instance_header(inst).dump(2) << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& cnf_path,
               const std::string& circuit_path, const std::string& target) {
    Instance inst = instance_path.empty()
                        ? compile_target(load_source(cnf_path, circuit_path), target)
                        : instance_from_json(slurp(instance_path));
    VerifyReport rep = verify_instance(inst);
    std::cout << verify_report_json(rep).dump(2) << "\n";
    return rep.pass ? 0 : kExitVerify;
}

int cmd_simulate(const std::string& circuit_path, const std::string& method, std::string in_bits,
                 std::string out_bits) {
    QuantumCircuit qc = parse_quantum_text(slurp(circuit_path));
    if (in_bits.empty()) in_bits.assign(qc.width, '0');
    if (out_bits.empty()) out_bits.assign(qc.width, '0');
    ordered_json j;
    j["method"] = method;
    if (method == "statevector") {
        std::complex<double> amp = amplitude(qc, out_bits, in_bits);
        j["amplitude_re"] = amp.real();
        j["amplitude_im"] = amp.imag();
        j["probability"] = !qc.measure.measured_qubits.empty()
                               ? outcome_probability(qc, in_bits, qc.measure)
                               : std::norm(amp);
    } else if (method == "pathsum" || method == "counting") {
        bool rewritten = false;
        for (const auto& g : qc.gates)
            if (g.kind != QKind::H && g.kind != QKind::T && g.kind != QKind::CZ) {
                rewritten = true;
                break;
            }
        QuantumCircuit norm = rewritten ? rewrite_to_htcz(toffoli_to_clifford_t(qc)) : qc;
        j["rewritten"] = rewritten;
        if (method == "pathsum") {
            PhasePolynomialMod8 p = extract_phase_polynomial(norm, out_bits, in_bits);
            CyclotomicAmplitude amp = direct_sum(p);
            auto z = amp.to_complex();
            j["coeffs"] = {amp.a0, amp.a1, amp.a2, amp.a3};
            j["half_exponent"] = amp.half_exponent;
            j["complex"] = ordered_json{{"re", z.real()}, {"im", z.imag()}};
            j["v"] = p.v;
            j["inconsistent"] = p.inconsistent;
        } else {
            PathsumReport rep = pathsum_report(norm, out_bits, in_bits);
            auto z = rep.amp.to_complex();
            j["coeffs"] = {rep.amp.a0, rep.amp.a1, rep.amp.a2, rep.amp.a3};
            j["half_exponent"] = rep.amp.half_exponent;
            j["complex"] = ordered_json{{"re", z.real()}, {"im", z.imag()}};
            j["v"] = rep.v;
            j["k"] = rep.k;
            j["term_count"] = rep.term_count;
            j["fallback"] = rep.fallback;
            j["inconsistent"] = rep.inconsistent;
        }
    } else {
        throw std::invalid_argument("unknown method '" + method + "'");
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

uint64_t poly_digest(const PhasePolynomialMod8& p) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(uint64_t(p.v));
    mix(p.constant);
    for (auto a : p.linear) mix(a);
    for (auto q : p.quad_rows) mix(q);
    return h;
}

int cmd_bench(const std::string& h_range, int trials, uint64_t seed) {
    auto sep = h_range.find("..");
    if (sep == std::string::npos) throw std::invalid_argument("--h-range expects LO..HI");
    int lo = std::stoi(h_range.substr(0, sep));
    int hi = std::stoi(h_range.substr(sep + 2));
    if (lo < 2 || hi < lo || hi > 26) throw std::invalid_argument("h range must satisfy 2 <= LO <= HI <= 26");

    ordered_json rows = ordered_json::array();
    std::mt19937_64 rng(seed);
    auto time_ms = [](auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };
    for (int h = lo; h <= hi; ++h) {
        std::vector<double> direct_ms, counting_ms;
        uint64_t digest = 0;
        for (int t = 0; t < trials; ++t) {
            PhasePolynomialMod8 p = random_phase_poly(rng, h);
            digest ^= poly_digest(p);
            CyclotomicAmplitude d, c;
            direct_ms.push_back(time_ms([&] { d = direct_sum(p); }));
            int k = choose_split_k(h);
            counting_ms.push_back(time_ms([&] { c = counting_sum(p, k); }));
            if (!d.same_value(c)) throw std::logic_error("engine mismatch during bench");
        }
        if (trials == 0) continue;
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            return v[v.size() / 2];
        };
        rows.push_back(ordered_json{{"h", h},
                                    {"trials", trials},
                                    {"digest", digest},
                                    {"direct_ms_median", median(direct_ms)},
                                    {"counting_ms_median", median(counting_ms)}});
    }
    ordered_json j;
    j["seed"] = seed;
    j["trials"] = trials;
    j["rows"] = rows;
    if (rows.size() >= 2) {
        // Least-squares slope of log2(median) vs h.
        auto fit = [&](const char* key) {
            double sx = 0, sy = 0, sxy = 0, sxx = 0;
            int npts = 0;
            for (const auto& r : rows) {
                double x = r.at("h").get<double>();
                double y = std::log2(std::max(r.at(key).get<double>(), 1e-6));
                sx += x;
                sy += y;
                sxy += x * y;
                sxx += x * x;
                ++npts;
            }
            return (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
        };
        j["fit"] = ordered_json{{"direct_exponent", fit("direct_ms_median")},
                                {"counting_exponent", fit("counting_ms_median")}};
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean gap/counting quantum instance workbench"};
    app.require_subcommand(1);

    std::string cnf_path, circuit_path, mode = "sharp", target, out_path, instance_path;
    std::string qc_path, method = "statevector", in_bits, out_bits, h_range = "4..10";
    int trials = 3;
    uint64_t seed = 1;
    bool pathsum_flag = false;

    auto* count_cmd = app.add_subcommand("count", "#f and gap(f) by enumeration");
    count_cmd->add_option("--cnf", cnf_path, "DIMACS CNF file");
    count_cmd->add_option("--circuit", circuit_path, "Boolean circuit file");
    count_cmd->add_option("--mode", mode, "sharp|gap|unique-gap")->capture_default_str();

    auto* compile_cmd = app.add_subcommand("compile", "compile f into a hardness instance");
    compile_cmd->add_option("--cnf", cnf_path, "DIMACS CNF file");
    compile_cmd->add_option("--circuit", circuit_path, "Boolean circuit file");
    compile_cmd->add_option("--target", target,
                            "reversible|dqc1|hc1q|clifford-t-sharp|clifford-t-gap|h-count|"
                            "sharp-marginal")
        ->required();
    compile_cmd->add_option("--out", out_path, "output instance file (stdout when omitted)");

    auto* verify_cmd = app.add_subcommand("verify", "oracle value vs closed-form value");
    verify_cmd->add_option("--instance", instance_path, "instance file");
    verify_cmd->add_option("--cnf", cnf_path, "DIMACS CNF file");
    verify_cmd->add_option("--circuit", circuit_path, "Boolean circuit file");
    verify_cmd->add_option("--target", target, "target when compiling from --cnf/--circuit");

    auto* sim_cmd = app.add_subcommand("simulate", "simulate a quantum circuit file");
    sim_cmd->add_option("--circuit", qc_path, "quantum circuit file")->required();
    sim_cmd->add_option("--method", method, "statevector|pathsum|counting")
        ->capture_default_str();
    sim_cmd->add_option("--in", in_bits, "input basis string (default 0...0)");
    sim_cmd->add_option("--out", out_bits, "output basis string (default 0...0)");

    auto* bench_cmd = app.add_subcommand("bench", "time direct enumeration vs counting");
    bench_cmd->add_flag("--pathsum", pathsum_flag, "benchmark the path-sum engines");
    bench_cmd->add_option("--h-range", h_range, "LO..HI")->capture_default_str();
    bench_cmd->add_option("--trials", trials, "trials per h")->capture_default_str();
    bench_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (count_cmd->parsed()) return cmd_count(cnf_path, circuit_path, mode);
        if (compile_cmd->parsed()) return cmd_compile(cnf_path, circuit_path, target, out_path);
        if (verify_cmd->parsed())
            return cmd_verify(instance_path, cnf_path, circuit_path, target);
        if (sim_cmd->parsed()) return cmd_simulate(qc_path, method, in_bits, out_bits);
        if (bench_cmd->parsed()) return cmd_bench(h_range, trials, seed);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const enumeration_limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

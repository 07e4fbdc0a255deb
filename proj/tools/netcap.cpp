// netcap: capacity analysis, hard-instance construction and self-checks for
// structured feed-forward networks, emitting JSON reports and CSV tables.

#include "netcap/activation.hpp"
#include "netcap/architecture.hpp"
#include "netcap/bump.hpp"
#include "netcap/capacity.hpp"
#include "netcap/errors.hpp"
#include "netcap/hard_family.hpp"
#include "netcap/lower_bounds.hpp"
#include "netcap/sign_code.hpp"
#include "netcap/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string digest_of(std::string_view bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx",
                  static_cast<unsigned long long>(fnv1a(bytes)));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw netcap::ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw netcap::ValidationError("cannot write file: " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

// Assembled envelope around a command's results. Wall clock stays outside
// "results" so reruns with the same inputs produce byte-identical payloads.
json make_report(const std::string& command, std::uint64_t seed,
                 const std::string& digest_source, json results, double wall_ms,
                 std::optional<bool> pass) {
    json report;
    report["command"] = command;
    report["version"] = kVersion;
    report["seed"] = seed;
    report["input_digest"] = digest_of(digest_source);
    report["results"] = std::move(results);
    if (pass.has_value()) report["pass"] = *pass;
    report["wall_clock_ms"] = wall_ms;
    return report;
}

void emit(const json& report, const std::optional<std::string>& out_dir,
          const std::string& filename) {
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (out_dir) atomic_write(std::filesystem::path(*out_dir) / filename, text);
}

json ledger_json(const netcap::ConstantLedger& lg) {
    return {{"c", lg.c},       {"c1", lg.c1},           {"d", lg.d},
            {"c1_prime", lg.c1_prime}, {"c2_prime", lg.c2_prime}, {"c3", lg.c3}};
}

std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> eps;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size())
            throw netcap::ValidationError("malformed epsilon entry: '" + item + "'");
        eps.push_back(v);
    }
    if (eps.empty())
        throw netcap::ValidationError("epsilon list must contain at least one value");
    return eps;
}

netcap::ConstantLedger parse_ledger(const std::string& text, int d) {
    double c = 1.0, c1 = 1.0;
    if (std::sscanf(text.c_str(), "%lf,%lf", &c, &c1) != 2)
        throw netcap::ValidationError("malformed --ledger, expected c,c1");
    return netcap::constant_ledger(c, c1, d);
}

std::vector<long long> parse_n_range(const std::string& text) {
    long long a = 0, b = 0;
    if (std::sscanf(text.c_str(), "%lld:%lld", &a, &b) != 2)
        throw netcap::ValidationError("malformed --n-range, expected A:B");
    if (a < 2 || b < a)
        throw netcap::ValidationError("--n-range needs 2 <= A <= B");
    std::vector<long long> values;
    for (long long n = a; n <= b; n *= 2) values.push_back(n);
    return values;
}

// ---- analyze --------------------------------------------------------------

int run_analyze(const std::string& arch_path, const std::string& eps_text,
                std::uint64_t seed, const std::optional<std::string>& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string arch_bytes = read_file(arch_path);
    const std::vector<double> eps_list = parse_eps_list(eps_text);
    const netcap::Architecture arch = netcap::load_architecture(arch_path);

    json results;
    results["input_dim"] = arch.input_dim;
    results["depth"] = arch.depth();
    results["radius"] = arch.radius;
    results["free_parameters"] = arch.free_param_count();
    results["distinct_slots"] = arch.param_count();
    results["max_width"] = arch.max_width();

    std::vector<int> widths{arch.input_dim};
    for (const auto& layer : arch.layers) widths.push_back(layer.d_out);
    results["widths"] = widths;
    results["dense_parameters"] = netcap::dense_param_count(widths);

    const netcap::ConstantLedger lg = netcap::ledger_for(arch);
    results["ledger"] = ledger_json(lg);

    json layer_bounds = json::array();
    for (int l = 1; l <= arch.depth(); ++l)
        layer_bounds.push_back(netcap::uniform_output_bound(arch, l));
    results["uniform_output_bounds"] = layer_bounds;

    json covering = json::array();
    for (double eps : eps_list) {
        const netcap::CoveringBound bound = netcap::network_covering_bound(arch, eps);
        covering.push_back({{"epsilon", bound.epsilon},
                            {"log2_tight", bound.log2_tight},
                            {"log2_relaxed", bound.log2_relaxed}});
    }
    results["covering_bounds"] = covering;

    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    const std::string digest_src =
        "analyze|" + arch_bytes + "|eps=" + eps_text + "|seed=" + std::to_string(seed);
    emit(make_report("analyze", seed, digest_src, std::move(results), ms, std::nullopt),
         out_dir, "analyze.json");
    return 0;
}

// ---- hard-instance ---------------------------------------------------------

int run_hard_instance(int d, double r, double c0, std::optional<long long> nstar_opt,
                      std::optional<int> n_opt, double beta, double c1t, double c2t,
                      std::uint64_t seed, std::size_t max_words,
                      const std::optional<std::string>& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();

    const netcap::BumpSpec bump = netcap::make_bump(d, r, c0);

    long long nstar = 0;
    json choice_trail;
    if (nstar_opt) {
        nstar = *nstar_opt;
        if (nstar < 1) throw netcap::ValidationError("--nstar must be positive");
    } else {
        const netcap::NStarChoice choice =
            netcap::choose_nstar(*n_opt, r, d, beta, c1t, c2t);
        nstar = choice.n_star;
        choice_trail = {{"n", *n_opt},
                        {"beta", beta},
                        {"c1_tilde", c1t},
                        {"c2_tilde", c2t},
                        {"required_cells", choice.required_cells},
                        {"log2_argument", choice.log2_argument}};
    }
    if (nstar > (1LL << 20))
        throw netcap::GuardError("n_star exceeds the materialization guard");

    const netcap::HardFamily family =
        netcap::build_family(static_cast<int>(nstar), bump, seed, max_words);

    const auto loc = netcap::verify_localization(family, 2000, seed);
    const int members = static_cast<int>(std::min<std::size_t>(family.size(), 4));
    const auto memb = netcap::verify_class_membership(family, members, 400, seed);

    // Size the separation grid so the refined tensor grid stays materializable.
    const double limit = std::pow(4.2e6, 1.0 / d) / 2.0;
    const int k_max = static_cast<int>(limit / static_cast<double>(nstar));
    const int k = std::clamp(k_max, 2, 32);
    const auto sep = netcap::verify_separation(family, 12, k);

    const bool pass = loc.pass && memb.pass && sep.pass;

    json results;
    results["d"] = d;
    results["r"] = r;
    results["c0"] = c0;
    results["n_star"] = nstar;
    if (!choice_trail.is_null()) results["n_star_choice"] = choice_trail;
    results["cells"] = family.partition.cell_count();
    results["family_size"] = family.size();
    results["separation_bound"] = sep.bound;
    results["bump"] = {{"shoulder_p", bump.shoulder_p},
                       {"measured_holder", bump.measured_holder},
                       {"l1_norm", bump.l1_norm()},
                       {"plateau_halfwidth", bump.plateau_halfwidth()},
                       {"support_halfwidth", bump.support_halfwidth()}};
    results["code"] = {{"m", family.code.m},
                       {"target_l1", family.code.target_l1},
                       {"min_l1", family.code.min_l1},
                       {"exhaustive", family.code.exhaustive},
                       {"full_cardinality", family.code.full_cardinality}};
    results["localization"] = {{"samples", loc.samples},
                               {"max_overlapping", loc.max_overlapping},
                               {"centers_hit", loc.centers_hit},
                               {"pass", loc.pass}};
    results["membership"] = {{"r", memb.r},
                             {"c0", memb.c0},
                             {"slack", memb.slack},
                             {"max_ratio", memb.max_ratio},
                             {"pairs_checked", memb.pairs_checked},
                             {"pass", memb.pass}};
    results["separation"] = {{"bound", sep.bound},
                             {"min_distance", sep.min_distance},
                             {"max_est_tolerance", sep.max_est_tolerance},
                             {"max_closed_form_reldiff", sep.max_closed_form_reldiff},
                             {"pairs_checked", sep.pairs_checked},
                             {"nodes_per_cell_axis", k},
                             {"pass", sep.pass}};

    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    std::ostringstream digest_input;
    digest_input << "hard-instance|d=" << d << "|r=" << r << "|c0=" << c0
         << "|nstar=" << nstar << "|seed=" << seed << "|max_words=" << max_words;
    emit(make_report("hard-instance", seed, digest_input.str(), std::move(results), ms, pass),
         out_dir, "hard_instance.json");
    return pass ? 0 : 1;
}

// ---- verify ----------------------------------------------------------------

int run_verify(const std::optional<std::string>& suites_text,
               const std::optional<std::string>& arch_path, std::uint64_t seed,
               const std::optional<std::string>& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<std::string> names;
    if (suites_text) {
        std::stringstream ss(*suites_text);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) names.push_back(item);
        if (names.empty())
            throw netcap::ValidationError("--suite list must name at least one suite");
    } else {
        names = netcap::available_suites();
    }

    std::optional<netcap::Architecture> arch;
    std::string arch_bytes;
    if (arch_path) {
        arch_bytes = read_file(*arch_path);
        arch = netcap::load_architecture(*arch_path);
    }

    bool all_pass = true;
    json suites = json::array();
    for (const std::string& name : names) {
        const netcap::SuiteResult res = netcap::run_suite(name, arch, seed);
        all_pass = all_pass && res.pass;
        suites.push_back({{"name", res.name}, {"pass", res.pass}, {"details", res.details}});
    }
    json results;
    results["suites"] = suites;

    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    std::string digest_src = "verify|seed=" + std::to_string(seed) + "|suites=";
    for (const auto& n : names) digest_src += n + ",";
    digest_src += "|arch=" + arch_bytes;
    emit(make_report("verify", seed, digest_src, std::move(results), ms, all_pass),
         out_dir, "verify.json");
    return all_pass ? 0 : 1;
}

// ---- gap -------------------------------------------------------------------

int run_gap(double r, int d, int L, const std::string& n_range_text,
            const std::string& ledger_text, double radius, double d_max,
            std::uint64_t seed, const std::optional<std::string>& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<long long> n_values = parse_n_range(n_range_text);
    const netcap::ConstantLedger lg = parse_ledger(ledger_text, d);
    const netcap::GapReport report =
        netcap::gap_report(r, d, L, n_values, lg, radius, d_max);

    json rows = json::array();
    std::ostringstream csv;
    csv << "n,curve,value,normalized\n";
    for (const auto& row : report.rows) {
        rows.push_back({{"n", row.n},
                        {"shallow_upper", row.shallow_upper},
                        {"relu_deep_upper", row.relu_deep_upper},
                        {"deep_lower_value", row.deep_lower_value},
                        {"deep_lower", row.deep_lower},
                        {"shallow_covering", row.shallow_covering},
                        {"vc_covering", row.vc_covering},
                        {"ratio", row.ratio}});
        csv << row.n << ",shallow-upper," << row.shallow_upper << ",1\n";
        csv << row.n << ",relu-deep-upper," << row.relu_deep_upper << ",1\n";
        csv << row.n << ",deep-lower," << row.deep_lower_value << ",0\n";
        csv << row.n << ",shallow-covering," << row.shallow_covering << ",1\n";
        csv << row.n << ",vc-covering," << row.vc_covering << ",1\n";
    }

    json results;
    results["r"] = r;
    results["d"] = d;
    results["L"] = L;
    results["radius"] = radius;
    results["d_max"] = d_max;
    results["ledger"] = ledger_json(lg);
    results["rows"] = rows;

    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    std::ostringstream digest_input;
    digest_input << "gap|r=" << r << "|d=" << d << "|L=" << L << "|n=" << n_range_text
         << "|ledger=" << ledger_text << "|R=" << radius << "|dmax=" << d_max;
    emit(make_report("gap", seed, digest_input.str(), std::move(results), ms, std::nullopt),
         out_dir, "gap.json");
    if (out_dir)
        atomic_write(std::filesystem::path(*out_dir) / "gap.csv", csv.str());
    return 0;
}

// ---- bounds ----------------------------------------------------------------

int run_bounds(const std::string& kind, long long n, double r, int d, double beta,
               double c1t, double c2t, int L, double radius, double d_max,
               const std::string& ledger_text, std::uint64_t seed,
               const std::optional<std::string>& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();

    netcap::LowerBoundCertificate cert;
    if (kind == "relation") {
        netcap::RelationInputs in;
        in.c1_tilde = c1t;
        in.c2_tilde = c2t;
        in.beta = beta;
        in.n = n;
        in.r = r;
        in.d = d;
        cert = netcap::relation_lower_bound(in);
    } else if (kind == "deep-net") {
        const netcap::ConstantLedger lg = parse_ledger(ledger_text, d);
        cert = netcap::deep_net_lower_bound(n, L, radius, d_max, r, d, lg);
    } else {
        throw netcap::ValidationError("--kind must be relation or deep-net");
    }

    json results;
    results["kind"] = cert.kind;
    results["value"] = cert.value;
    results["constant"] = cert.constant;
    results["exponent"] = cert.exponent;
    results["complexity"] = cert.complexity;
    results["trail"] = {{"smoothness_load", cert.smoothness_load},
                        {"log2_argument", cert.log2_argument},
                        {"bracket", cert.bracket}};
    if (cert.kind == "deep-net") {
        results["trail"]["c3"] = cert.c3;
        results["trail"]["cbar1_prime"] = cert.cbar1_prime;
        results["inputs"] = {{"n", cert.n},           {"L", cert.L},
                             {"radius", cert.radius}, {"d_max", cert.d_max},
                             {"r", cert.r},           {"d", cert.d},
                             {"ledger", ledger_json(cert.ledger)}};
    } else {
        results["trail"]["n_star"] = cert.n_star;
        results["inputs"] = {{"n", cert.relation_inputs.n},
                             {"r", cert.relation_inputs.r},
                             {"d", cert.relation_inputs.d},
                             {"beta", cert.relation_inputs.beta},
                             {"c1_tilde", cert.relation_inputs.c1_tilde},
                             {"c2_tilde", cert.relation_inputs.c2_tilde}};
    }

    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    std::ostringstream digest_input;
    digest_input << "bounds|kind=" << kind << "|n=" << n << "|r=" << r << "|d=" << d
         << "|beta=" << beta << "|c1t=" << c1t << "|c2t=" << c2t << "|L=" << L
         << "|R=" << radius << "|dmax=" << d_max << "|ledger=" << ledger_text;
    emit(make_report("bounds", seed, digest_input.str(), std::move(results), ms, std::nullopt),
         out_dir, "bounds.json");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"capacity analysis for structured feed-forward networks"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "covering bounds for an architecture");
    std::string arch_path, eps_text;
    std::optional<std::string> out_dir;
    std::uint64_t seed = 0;
    analyze->add_option("--arch", arch_path, "architecture JSON file")->required();
    analyze->add_option("--eps", eps_text, "comma-separated epsilon list")->required();
    analyze->add_option("--out", out_dir, "output directory");
    analyze->add_option("--seed", seed, "random seed (recorded in the report)");

    // hard-instance
    auto* hard = app.add_subcommand("hard-instance",
                                    "build and verify a separated bump family");
    int hi_d = 1;
    double hi_r = 1.0, hi_c0 = 1.0, hi_beta = 0.0, hi_c1t = 1.0, hi_c2t = 10.0;
    std::optional<long long> hi_nstar;
    std::optional<int> hi_n;
    std::uint64_t hi_seed = 0;
    std::size_t hi_max_words = 4096;
    std::optional<std::string> hi_out;
    hard->add_option("--d", hi_d, "input dimension")->required();
    hard->add_option("--r", hi_r, "smoothness order")->required();
    hard->add_option("--c0", hi_c0, "class constant")->required();
    auto* nstar_opt = hard->add_option("--nstar", hi_nstar, "grid resolution");
    auto* n_opt = hard->add_option("--n", hi_n, "parameter budget (resolves n_star)");
    nstar_opt->excludes(n_opt);
    n_opt->excludes(nstar_opt);
    hard->add_option("--beta", hi_beta, "covering-condition exponent");
    hard->add_option("--c1-tilde", hi_c1t, "covering-condition constant");
    hard->add_option("--c2-tilde", hi_c2t, "covering-condition constant");
    hard->add_option("--seed", hi_seed, "random seed");
    hard->add_option("--max-words", hi_max_words, "materialization cap for the code");
    hard->add_option("--out", hi_out, "output directory");

    // verify
    auto* verify = app.add_subcommand("verify", "run self-check suites");
    std::optional<std::string> suites_text, verify_arch;
    std::uint64_t verify_seed = 0;
    std::optional<std::string> verify_out;
    verify->add_option("--suite", suites_text, "comma-separated suite names");
    verify->add_option("--arch", verify_arch, "architecture JSON file for net suites");
    verify->add_option("--seed", verify_seed, "random seed");
    verify->add_option("--out", verify_out, "output directory");

    // gap
    auto* gap = app.add_subcommand("gap", "rate-curve comparison table");
    double gap_r = 1.0;
    int gap_d = 1, gap_L = 2;
    std::string n_range_text, gap_ledger = "1,1";
    double gap_radius = 2.0, gap_dmax = 2.0;
    std::uint64_t gap_seed = 0;
    std::optional<std::string> gap_out;
    gap->add_option("--r", gap_r, "smoothness order")->required();
    gap->add_option("--d", gap_d, "input dimension")->required();
    gap->add_option("--L", gap_L, "depth")->required();
    gap->add_option("--n-range", n_range_text, "doubling range A:B")->required();
    gap->add_option("--ledger", gap_ledger, "activation constants c,c1");
    gap->add_option("--radius", gap_radius, "parameter radius");
    gap->add_option("--d-max", gap_dmax, "largest width");
    gap->add_option("--seed", gap_seed, "random seed");
    gap->add_option("--out", gap_out, "output directory");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "evaluate one lower-bound certificate");
    std::string bounds_kind = "deep-net", bounds_ledger = "1,1";
    long long bounds_n = 2;
    double bounds_r = 1.0, bounds_beta = 0.0, bounds_c1t = 1.0, bounds_c2t = 10.0;
    int bounds_d = 1, bounds_L = 1;
    double bounds_radius = 2.0, bounds_dmax = 2.0;
    std::uint64_t bounds_seed = 0;
    std::optional<std::string> bounds_out;
    bounds->add_option("--kind", bounds_kind, "relation or deep-net")->required();
    bounds->add_option("--n", bounds_n, "parameter count")->required();
    bounds->add_option("--r", bounds_r, "smoothness order")->required();
    bounds->add_option("--d", bounds_d, "input dimension")->required();
    bounds->add_option("--beta", bounds_beta, "covering-condition exponent");
    bounds->add_option("--c1-tilde", bounds_c1t, "covering-condition constant");
    bounds->add_option("--c2-tilde", bounds_c2t, "covering-condition constant");
    bounds->add_option("--L", bounds_L, "depth (deep-net)");
    bounds->add_option("--radius", bounds_radius, "parameter radius (deep-net)");
    bounds->add_option("--d-max", bounds_dmax, "largest width (deep-net)");
    bounds->add_option("--ledger", bounds_ledger, "activation constants c,c1");
    bounds->add_option("--seed", bounds_seed, "random seed");
    bounds->add_option("--out", bounds_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the usage hint
        return 2;
    }

    try {
        if (app.got_subcommand(analyze))
            return run_analyze(arch_path, eps_text, seed, out_dir);
        if (app.got_subcommand(hard)) {
            if (!hi_nstar && !hi_n)
                throw netcap::ValidationError("one of --nstar or --n is required");
            return run_hard_instance(hi_d, hi_r, hi_c0, hi_nstar, hi_n, hi_beta, hi_c1t,
                                     hi_c2t, hi_seed, hi_max_words, hi_out);
        }
        if (app.got_subcommand(verify))
            return run_verify(suites_text, verify_arch, verify_seed, verify_out);
        if (app.got_subcommand(gap))
            return run_gap(gap_r, gap_d, gap_L, n_range_text, gap_ledger, gap_radius,
                           gap_dmax, gap_seed, gap_out);
        if (app.got_subcommand(bounds))
            return run_bounds(bounds_kind, bounds_n, bounds_r, bounds_d, bounds_beta,
                              bounds_c1t, bounds_c2t, bounds_L, bounds_radius,
                              bounds_dmax, bounds_ledger, bounds_seed, bounds_out);
    } catch (const netcap::ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const netcap::DomainError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const netcap::GuardError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const netcap::UnsupportedError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const netcap::ConstructionError& e) {
        std::cerr << "construction error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

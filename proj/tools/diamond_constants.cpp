#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "diamond/checks.hpp"

using namespace diamond;

namespace {

int parse_f_range(const std::string& s, int& lo, int& hi) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(s);
        } else {
            lo = std::stoi(s.substr(0, dots));
            hi = std::stoi(s.substr(dots + 2));
        }
    } catch (...) {
        return -1;
    }
    return (lo >= 1 && hi >= lo && hi <= 8) ? 0 : -1;
}

std::uint32_t parse_index_set(const std::string& s, int f) {
    if (s.empty() || s == "{}") return 0;
    std::uint32_t bits = 0;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        int j = std::stoi(tok);
        if (j < 0 || j >= f) throw error("index out of range in set: " + tok);
        bits |= 1u << j;
        pos = comma == std::string::npos ? s.size() : comma + 1;
    }
    return bits;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of Diamond-diagram constants and etale phi-module matrices"};
    app.require_subcommand(1);

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run lemma or theorem checks");
    std::string what = "all", slug, f_range = "1..2", j_rho_str = "*", r_str, format = "text",
                mode_str = "strict", mutate, params_file;
    i64 p_opt = 0;
    int e_opt = 0, trials = 3, op_trials = 50, precision = 0;
    std::uint64_t seed = 1;
    bool serial = false;

    verify->add_option("what", what, "all | theorem | lemma")->required();
    verify->add_option("slug", slug, "lemma slug (with what=lemma)");
    verify->add_option("--f", f_range, "f or range, e.g. 2 or 1..4");
    verify->add_option("--p", p_opt, "prime override");
    verify->add_option("--e", e_opt, "coefficient-field degree override");
    verify->add_option("--j-rho", j_rho_str, "restrict J_rho, e.g. 0,2 (default: sweep)");
    verify->add_option("--r", r_str, "explicit r-vector, comma separated (needs --p)");
    verify->add_option("--seed", seed, "PRNG seed");
    verify->add_option("--trials", trials, "parameter sets per (f, J_rho)");
    verify->add_option("--op-trials", op_trials, "randomized operator trials");
    verify->add_option("--precision", precision, "Witt precision override");
    verify->add_option("--format", format, "text | json");
    verify->add_option("--mode", mode_str, "strict | relaxed");
    verify->add_option("--mutate", mutate, "negative control: d | r | table-case | s-sign | coset");
    verify->add_option("--params", params_file, "JSON parameter profile to use");
    verify->add_flag("--serial", serial, "force the serial reference kernels");

    // ---- params ----
    auto* params_cmd = app.add_subcommand("params", "generate or validate parameter profiles");
    std::string out_file, validate_file, pj_rho;
    i64 pp = 31;
    int pf = 1, pe = 0;
    std::uint64_t pseed = 1;
    bool relaxed = false;
    params_cmd->add_option("--p", pp, "prime");
    params_cmd->add_option("--f", pf, "number of embeddings");
    params_cmd->add_option("--e", pe, "coefficient-field degree (default f)");
    params_cmd->add_option("--j-rho", pj_rho, "J_rho as comma separated indices");
    params_cmd->add_option("--seed", pseed, "PRNG seed");
    params_cmd->add_option("--out", out_file, "write the profile here (default stdout)");
    params_cmd->add_option("--validate", validate_file, "validate this profile instead");
    params_cmd->add_option("--mode", mode_str, "strict | relaxed (validation)");
    params_cmd->add_flag("--relaxed", relaxed, "sample with relaxed bounds");

    // ---- report ----
    auto* report_cmd = app.add_subcommand("report", "summarize a report or emit module data");
    std::string report_file, kisin_j;
    bool emit_kisin = false, emit_lt = false, emit_fl = false, emit_nu = false;
    report_cmd->add_option("file", report_file, "report JSON to summarize");
    report_cmd->add_flag("--kisin", emit_kisin, "emit Kisin matrices for --params");
    report_cmd->add_flag("--lubin-tate", emit_lt, "emit the Lubin-Tate matrices");
    report_cmd->add_flag("--fontaine-laffaille", emit_fl, "emit the Fontaine-Laffaille data");
    report_cmd->add_flag("--nu", emit_nu, "emit the extended nu matrix");
    report_cmd->add_option("--params", params_file, "JSON parameter profile");
    report_cmd->add_option("--j", kisin_j, "subset J for --kisin, e.g. 0,1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            checks::Config cfg;
            if (parse_f_range(f_range, cfg.f_min, cfg.f_max) != 0) {
                std::cerr << "bad --f range: " << f_range << "\n";
                return 2;
            }
            cfg.trials = trials;
            cfg.op_trials = op_trials;
            cfg.seed = seed;
            cfg.precision = precision;
            cfg.mode = (mode_str == "relaxed") ? Mode::relaxed : Mode::strict;
            cfg.mutate = mutate;
            cfg.parallel = !serial;
            if (p_opt) cfg.primes = {p_opt};
            if (!params_file.empty()) cfg.params = params_from_json(slurp(params_file));
            if (!r_str.empty()) {
                if (!p_opt) {
                    std::cerr << "--r needs --p\n";
                    return 2;
                }
                std::vector<i64> r;
                size_t pos = 0;
                while (pos < r_str.size()) {
                    size_t comma = r_str.find(',', pos);
                    r.push_back(std::stoll(r_str.substr(pos, comma - pos)));
                    pos = comma == std::string::npos ? r_str.size() : comma + 1;
                }
                int f = static_cast<int>(r.size());
                SubsetJ jr = subset_of(parse_index_set(j_rho_str == "*" ? "" : j_rho_str, f), f);
                ParamSet base = sample(p_opt, f, jr, seed, e_opt);
                cfg.params = ParamSet::make(p_opt, f, e_opt ? e_opt : f, r, jr, base.beta, base.d);
            } else if (j_rho_str != "*") {
                if (cfg.f_min != cfg.f_max) {
                    std::cerr << "--j-rho needs a single --f value\n";
                    return 2;
                }
                cfg.j_rho_bits = parse_index_set(j_rho_str, cfg.f_min);
            }

            std::vector<checks::CheckRecord> recs;
            std::string ran;
            if (what == "all") {
                recs = checks::run_all(cfg);
                ran = "all";
            } else if (what == "theorem") {
                recs = checks::run_slug("theorem", cfg);
                ran = "theorem";
            } else if (what == "lemma") {
                std::string s = slug;
                for (char& c : s)
                    if (c == '+') c = '-';  // accept t+t+s style spellings
                if (!checks::is_slug(s)) {
                    std::cerr << "unknown lemma slug: " << slug << "\n";
                    return 2;
                }
                recs = checks::run_slug(s, cfg);
                ran = s;
            } else {
                std::cerr << "verify expects: all | theorem | lemma <slug>\n";
                return 2;
            }

            std::string cfg_desc = "verify " + ran + " f=" + f_range + " trials=" +
                                   std::to_string(trials) + " seed=" + std::to_string(seed) +
                                   " mode=" + mode_str +
                                   (mutate.empty() ? "" : " mutate=" + mutate);
            if (format == "json")
                std::cout << checks::report_json(cfg_desc, recs) << "\n";
            else
                std::cout << checks::report_text(recs, true);
            return checks::all_pass(recs) ? 0 : 1;
        }

        if (*params_cmd) {
            if (!validate_file.empty()) {
                ParamSet ps = params_from_json(slurp(validate_file));
                Mode m = (mode_str == "relaxed") ? Mode::relaxed : Mode::strict;
                ValidationReport rep = validate(ps, m);
                if (rep.ok()) {
                    std::cout << "valid (" << (m == Mode::strict ? "strict" : "relaxed") << ")\n";
                    return 0;
                }
                for (const std::string& v : rep.violations) std::cout << "violation: " << v << "\n";
                return 1;
            }
            SubsetJ jr = subset_of(parse_index_set(pj_rho, pf), pf);
            ParamSet ps = relaxed ? sample_relaxed(pp, pf, jr, pseed, pe)
                                  : sample(pp, pf, jr, pseed, pe);
            std::string text = to_json(ps);
            if (out_file.empty()) {
                std::cout << text << "\n";
            } else {
                std::ofstream of(out_file);
                of << text << "\n";
            }
            return 0;
        }

        if (*report_cmd) {
            if (emit_kisin || emit_lt || emit_fl || emit_nu) {
                if (params_file.empty()) {
                    std::cerr << "need --params for module data output\n";
                    return 2;
                }
                ParamSet ps = params_from_json(slurp(params_file));
                if (emit_lt) std::cout << leadterm::lubin_tate_json(ps) << "\n";
                if (emit_fl) std::cout << leadterm::fontaine_laffaille_json(ps) << "\n";
                if (emit_kisin) {
                    SubsetJ J = subset_of(parse_index_set(kisin_j, ps.f), ps.f);
                    std::cout << leadterm::kisin_json(J, ps) << "\n";
                }
                if (emit_nu)
                    std::cout << matrices::matrix_json(matrices::build_extended_nu(ps), ps) << "\n";
                return 0;
            }
            if (report_file.empty()) {
                std::cerr << "report: give a report file or an emit flag\n";
                return 2;
            }
            nlohmann::json j = nlohmann::json::parse(slurp(report_file));
            size_t pass = 0, total = 0;
            for (const auto& c : j.at("checks")) {
                ++total;
                if (c.at("status") == "pass") ++pass;
            }
            std::cout << "tool " << j.value("tool-version", "?") << ", config "
                      << j.value("config", "?") << "\n"
                      << pass << "/" << total << " checks passed\n";
            for (const auto& c : j.at("checks"))
                if (c.at("status") != "pass")
                    std::cout << "fail: " << c.at("slug").get<std::string>() << " J="
                              << c.at("subset").get<std::string>() << "\n";
            return pass == total ? 0 : 1;
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

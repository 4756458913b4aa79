// SPDX-License-Identifier: Apache-2.0
//
// charsum CLI: run verification suites, compute individual sums, emit the
// bound-comparison table.
//
// Exit codes: 0 all checks pass / success, 1 any check failed or I/O error,
// 2 usage error (bad parameters, caps exceeded).

#include "charsum/charsums.hpp"
#include "charsum/matgroups.hpp"
#include "charsum/polyseries.hpp"
#include "charsum/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace charsum;

// Default grids; chosen to finish in well under a minute single-threaded.
const std::vector<std::pair<long, long>> kGlGrid = {{1, 2}, {1, 3}, {1, 5}, {1, 7}, {2, 2}, {2, 3},
                                                    {2, 4}, {2, 5}, {2, 7}, {3, 2}, {3, 3}};
const std::vector<long> kGaussGrid = {2, 3, 4, 5, 7, 8, 9};
const std::vector<std::pair<long, long>> kKimGrid = {{2, 3}, {2, 5}, {2, 7}, {3, 3}, {3, 5}};
const std::vector<std::pair<long, long>> kKloostGlGrid = {{1, 2}, {1, 3}, {1, 5}, {2, 2},
                                                          {2, 3}, {2, 5}, {3, 2}, {3, 3}};
const std::vector<std::pair<long, long>> kUnitaryGrid = {{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}};
const std::vector<long> kLemma1Grid = {2, 3, 4, 5};
const std::vector<long> kLemma2Grid = {3, 5};
const std::vector<long> kLemma3Grid = {2, 3};
const std::vector<long> kEulerGrid = {2, 3, 4, 5};

void emit(const std::vector<VerificationReport>& reports, bool as_json) {
    for (const auto& r : reports) std::cout << (as_json ? r.json_line() : r.human()) << "\n";
}

int run_verify(const std::string& scope, long n, long q, long maxdeg, bool as_json) {
    std::vector<VerificationReport> reports;
    auto append = [&](std::vector<VerificationReport> r) {
        reports.insert(reports.end(), r.begin(), r.end());
    };

    if (scope == "gl") {
        if (n > 0 && q > 0) {
            append(verify_gl(n, q));
            append(verify_gauss_modulus(q));
        } else {
            for (auto [gn, gq] : kGlGrid) append(verify_gl(gn, gq));
            for (long gq : kGaussGrid) append(verify_gauss_modulus(gq));
        }
    } else if (scope == "kloosterman") {
        if (n > 0 && q > 0) {
            append(verify_kim(n, q));
            append(verify_kloost_gl(n, q));
        } else {
            for (auto [gn, gq] : kKimGrid) append(verify_kim(gn, gq));
            for (auto [gn, gq] : kKloostGlGrid) append(verify_kloost_gl(gn, gq));
        }
    } else if (scope == "unitary") {
        if (n > 0 && q > 0) {
            append(verify_unitary(n, q));
        } else {
            for (auto [gn, gq] : kUnitaryGrid) append(verify_unitary(gn, gq));
        }
    } else if (scope == "lemmas") {
        if (q > 0) {
            append(verify_lemmas(q, maxdeg));
        } else {
            for (long gq : kLemma1Grid) append(verify_lemma1(gq, maxdeg));
            for (long gq : kLemma2Grid) append(verify_lemma2(gq, std::min<long>(maxdeg, 4)));
            for (long gq : kLemma3Grid) append(verify_lemma3(gq, std::min<long>(maxdeg, 4)));
            for (long gq : kLemma3Grid) append(verify_invariants(gq, 4));
        }
    } else if (scope == "euler") {
        const long N = maxdeg > 0 ? maxdeg : 8;
        if (q > 0) {
            append(verify_euler(q, N));
        } else {
            for (long gq : kEulerGrid) append(verify_euler(gq, N));
        }
    } else if (scope == "all") {
        for (auto [gn, gq] : kGlGrid) append(verify_gl(gn, gq));
        for (long gq : kGaussGrid) append(verify_gauss_modulus(gq));
        for (auto [gn, gq] : kKimGrid) append(verify_kim(gn, gq));
        for (auto [gn, gq] : kKloostGlGrid) append(verify_kloost_gl(gn, gq));
        for (auto [gn, gq] : kUnitaryGrid) append(verify_unitary(gn, gq));
        for (long gq : kLemma1Grid) append(verify_lemma1(gq, 5));
        for (long gq : kLemma2Grid) append(verify_lemma2(gq, 4));
        for (long gq : kLemma3Grid) append(verify_lemma3(gq, 4));
        for (long gq : kLemma3Grid) append(verify_invariants(gq, 4));
        for (long gq : kEulerGrid) append(verify_euler(gq, 8));
    } else {
        std::cerr << "unknown scope '" << scope << "' (expected all|gl|kloosterman|unitary|lemmas|euler)\n";
        return 2;
    }

    emit(reports, as_json);
    return all_pass(reports) ? 0 : 1;
}

void print_value(const std::string& kind, const CycNum& v, const std::string& format,
                 const std::string& extra_key = "", const std::string& extra_val = "") {
    const auto z = to_complex(v);
    if (format == "json") {
        nlohmann::json j;
        j["kind"] = kind;
        j["value"] = v.str();
        j["re"] = z.real();
        j["im"] = z.imag();
        if (!extra_key.empty()) j[extra_key] = extra_val;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << kind << " = " << v.str() << "\n";
        std::cout << "  ~ " << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag())
                  << "i\n";
        if (!extra_key.empty()) std::cout << "  " << extra_key << " = " << extra_val << "\n";
    }
}

int run_sum(const std::string& kind, long q, long n, long chi_j, long lam_a, long x, long y,
            const std::string& format) {
    if (q <= 0) {
        std::cerr << "sum: --q is required\n";
        return 2;
    }
    if (kind == "gauss") {
        auto F = make_field_q(q);
        const MultChar chi(*F, chi_j);
        const AddChar lam(*F, static_cast<Field::code_t>(lam_a));
        const CycNum G = gauss_sum(chi, lam);
        const CycNum mod2 = G * conj(G);
        print_value("gauss", G, format, "abs_squared", mod2.str());
    } else if (kind == "kloosterman") {
        auto F = make_field_q(q);
        const AddChar lam(*F, static_cast<Field::code_t>(lam_a));
        print_value("kloosterman",
                    kloosterman(lam, static_cast<Field::code_t>(x), static_cast<Field::code_t>(y)),
                    format);
    } else if (kind == "hyper") {
        auto F = make_field_q(q);
        const AddChar lam(*F, static_cast<Field::code_t>(lam_a));
        print_value("hyper", hyper_kloosterman(lam, static_cast<Field::code_t>(x), n), format);
    } else if (kind == "g1" || kind == "g2") {
        auto F2 = make_field_q(q * q);
        const MultChar chi(*F2, chi_j);
        const AddChar lam(*F2, static_cast<Field::code_t>(lam_a));
        print_value(kind, kind == "g1" ? g1(chi, lam) : g2(chi, lam), format);
    } else if (kind == "glsum") {
        auto F = make_field_q(q);
        const MultChar chi(*F, chi_j);
        const AddChar lam(*F, static_cast<Field::code_t>(lam_a));
        print_value("glsum", gl_char_sum(n, *F, chi, lam), format);
    } else if (kind == "usum") {
        auto F2 = make_field_q(q * q);
        const MultChar chi(*F2, chi_j);
        const AddChar lam(*F2, static_cast<Field::code_t>(lam_a));
        print_value("usum", u_char_sum(n, *F2, chi, lam), format);
    } else {
        std::cerr << "unknown sum kind '" << kind
                  << "' (expected gauss|kloosterman|hyper|g1|g2|glsum|usum)\n";
        return 2;
    }
    return 0;
}

int run_table(long nmax, const std::string& qset, const std::string& out_path) {
    std::vector<long> qs;
    std::stringstream ss(qset);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) qs.push_back(std::stol(tok));
    if (qs.empty()) {
        std::cerr << "table: --qset must list at least one prime power\n";
        return 2;
    }
    std::vector<long> ns;
    for (long n = 2; n <= nmax; ++n) ns.push_back(n);
    if (ns.empty()) {
        std::cerr << "table: --nmax must be >= 2\n";
        return 2;
    }

    const auto rows = bound_table(ns, qs);
    for (const auto& r : rows) {
        std::cout << "n=" << r.n << " q=" << r.q << " deligne=" << r.deligne
                  << " fulman=" << r.fulman << " max=" << r.max_actual
                  << " argmax_x=" << r.argmax_str
                  << (r.fulman < r.deligne ? "  [fulman beats deligne]" : "") << "\n";
    }

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "table: cannot write " << out_path << "\n";
            return 1;
        }
        if (out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json")
            out << bound_table_json(rows) << "\n";
        else
            out << bound_table_csv(rows);
        if (!out.good()) {
            std::cerr << "table: write failed for " << out_path << "\n";
            return 1;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Gauss/Kloosterman character sums over finite fields, GL(n,q) and U(n,q)"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run identity verification suites");
    std::string scope = "all";
    long vn = 0, vq = 0, vmaxdeg = 5;
    bool vjson = false;
    verify->add_option("scope", scope, "all|gl|kloosterman|unitary|lemmas|euler");
    verify->add_option("--n", vn, "matrix dimension (with --q)");
    verify->add_option("--q", vq, "field order (prime power)");
    verify->add_option("--max-degree", vmaxdeg, "series truncation degree for lemma/euler checks");
    verify->add_flag("--json", vjson, "emit JSON lines instead of human-readable reports");

    auto* sum = app.add_subcommand("sum", "compute one exact character sum");
    std::string kind, format = "text";
    long sq = 0, sn = 2, schi = 0, slam = 1, sx = 1, sy = 1;
    sum->add_option("kind", kind, "gauss|kloosterman|hyper|g1|g2|glsum|usum")->required();
    sum->add_option("--q", sq, "field order (for g1/g2/usum: the unitary parameter q)");
    sum->add_option("--n", sn, "dimension / hyper-Kloosterman order");
    sum->add_option("--chi", schi, "multiplicative character index");
    sum->add_option("--lam", slam, "additive character scale (element code)");
    sum->add_option("--x", sx, "element code x");
    sum->add_option("--y", sy, "element code y");
    sum->add_option("--format", format, "text|json");

    auto* table = app.add_subcommand("table", "emit the Deligne vs Fourier bound comparison");
    long nmax = 4;
    std::string qset = "3,5,7", out_path;
    table->add_option("--nmax", nmax, "largest hyper-Kloosterman order");
    table->add_option("--qset", qset, "comma-separated field orders");
    table->add_option("--out", out_path, "output file (.csv or .json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return run_verify(scope, vn, vq, vmaxdeg, vjson);
        if (sum->parsed()) return run_sum(kind, sq, sn, schi, slam, sx, sy, format);
        if (table->parsed()) return run_table(nmax, qset, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

// Command-line front end: manifest I/O and subcommand dispatch over the
// library. Exit codes: 0 success/pass, 1 verification failure, 2 usage or
// manifest error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spunembed/spunembed.hpp"

namespace {

using spunembed::manifest::json;

constexpr int exit_ok = 0;
constexpr int exit_verification_failure = 1;
constexpr int exit_usage = 2;

/// Manifest files resolve relative to the cwd, then the fixture directory
/// override if SPUNEMBED_FIXTURE_DIR is set.
std::string resolve_path(const std::string& path) {
    if (std::ifstream probe(path); probe.good()) return path;
    if (const char* dir = std::getenv("SPUNEMBED_FIXTURE_DIR")) {
        std::string alt = std::string(dir) + "/" + path;
        if (std::ifstream probe(alt); probe.good()) return alt;
    }
    return path;
}

json load_manifest(const std::string& path) {
    std::ifstream in(resolve_path(path));
    if (!in) throw spunembed::ManifestError("cannot open manifest: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw spunembed::ManifestError("manifest is not valid JSON: " + std::string(e.what()));
    }
    return j;
}

void write_output(const std::optional<std::string>& out_path, const json& j) {
    std::string text = spunembed::manifest::canonical(j);
    if (out_path) {
        std::ofstream out(*out_path);
        if (!out) throw spunembed::ManifestError("cannot write: " + *out_path);
        out << text;
        std::cout << "wrote " << *out_path << "\n";
    } else {
        std::cout << text;
    }
}

std::vector<std::uint8_t> parse_bits(const std::string& csv) {
    std::vector<std::uint8_t> bits;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "0")
            bits.push_back(0);
        else if (item == "1")
            bits.push_back(1);
        else
            throw spunembed::ManifestError("form values must be 0 or 1, got: " + item);
    }
    return bits;
}

std::vector<std::string> parse_names(const std::string& csv) {
    std::vector<std::string> names;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) names.push_back(item);
    return names;
}

std::vector<long long> parse_ints(const std::string& csv) {
    std::vector<long long> vals;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) vals.push_back(std::stoll(item));
    return vals;
}

spunembed::IntMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw spunembed::ManifestError("matrix must be a JSON array of rows");
    std::size_t rows = j.size();
    std::size_t cols = rows == 0 ? 0 : j.at(0).size();
    spunembed::IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j.at(r).is_array() || j.at(r).size() != cols)
            throw spunembed::ManifestError("matrix rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = spunembed::manifest::int128_from_json(j.at(r).at(c));
    }
    return m;
}

json matrix_to_json(const spunembed::IntMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(spunembed::manifest::int128_to_json(m.at(r, c)));
        rows.push_back(row);
    }
    return rows;
}

std::vector<spunembed::CurveClass> alphabet_from_names(const spunembed::CurveRegistry& reg,
                                                       const std::vector<std::string>& names) {
    std::vector<spunembed::CurveClass> alphabet;
    for (const auto& n : names) alphabet.push_back(reg.get(n));
    return alphabet;
}

int run(int argc, char** argv) {
    CLI::App app{"combinatorial open books, spun-embedding certificates, and the "
                 "checks behind them"};
    app.require_subcommand(1);

    // ---- snf ----------------------------------------------------------------
    std::string snf_matrix;
    auto* snf_cmd = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    snf_cmd->add_option("--matrix", snf_matrix,
                        "matrix as a JSON array of rows, e.g. [[2,0],[0,3]]")
        ->required();

    // ---- h1-openbook ----------------------------------------------------------
    std::string h1_preset, h1_manifest;
    int h1_genus = 3;
    auto* h1_cmd =
        app.add_subcommand("h1-openbook", "H1 of the 3-manifold bound by an open book");
    h1_cmd->add_option("--preset", h1_preset, "E_MINUS_3 | E_MINUS_4 | DISK | S5_PAGE");
    h1_cmd->add_option("--genus", h1_genus, "fiber genus for --preset");
    h1_cmd->add_option("--manifest", h1_manifest, "open_book manifest file");

    // ---- arf -------------------------------------------------------------------
    std::string arf_form;
    int arf_genus = 0;
    auto* arf_cmd = app.add_subcommand("arf", "Arf invariant of a quadratic form");
    arf_cmd->add_option("--form", arf_form, "basis values q(a1),q(b1),... e.g. 1,1,0,1,1,1")
        ->required();
    arf_cmd->add_option("--genus", arf_genus, "genus (default: inferred from length)");

    // ---- orbit -----------------------------------------------------------------
    std::string orbit_form, orbit_alphabet;
    int orbit_genus = 3;
    auto* orbit_cmd = app.add_subcommand("orbit", "twist orbit of a quadratic form");
    orbit_cmd->add_option("--form", orbit_form, "basis values, e.g. 1,1,0,1,1,1")->required();
    orbit_cmd->add_option("--genus", orbit_genus, "genus");
    orbit_cmd->add_option("--alphabet", orbit_alphabet,
                          "comma-separated curve names (default: full registry)");

    // ---- fixed-forms --------------------------------------------------------------
    std::string ff_alphabet;
    int ff_genus = 3;
    auto* ff_cmd =
        app.add_subcommand("fixed-forms", "forms fixed by every twist in an alphabet");
    ff_cmd->add_option("--genus", ff_genus, "genus");
    ff_cmd->add_option("--alphabet", ff_alphabet, "comma-separated curve names")->required();

    // ---- certify-nongeneration ------------------------------------------------------
    std::string ng_alphabet;
    int ng_genus = 3;
    std::optional<std::string> ng_out;
    auto* ng_cmd = app.add_subcommand(
        "certify-nongeneration",
        "certificate that an alphabet's twists stabilize a spin structure");
    ng_cmd->add_option("--genus", ng_genus, "genus");
    ng_cmd->add_option("--alphabet", ng_alphabet, "comma-separated curve names")->required();
    ng_cmd->add_option("--out", ng_out, "write the certificate manifest here");

    // ---- embed -------------------------------------------------------------------
    std::string embed_manifest, embed_target;
    std::optional<std::string> embed_out;
    auto* embed_cmd =
        app.add_subcommand("embed", "certify a spun embedding of an open book");
    embed_cmd->add_option("--manifest", embed_manifest, "open_book manifest")->required();
    embed_cmd->add_option("--target", embed_target, "S5 | S5-smooth | S2xS3 | S2xtS3")
        ->required();
    embed_cmd->add_option("--out", embed_out, "write the certificate manifest here");

    // ---- verify-cert -----------------------------------------------------------------
    std::string vc_manifest;
    auto* vc_cmd = app.add_subcommand("verify-cert", "replay an embedding certificate");
    vc_cmd->add_option("--manifest", vc_manifest, "embedding_certificate manifest")->required();

    // ---- targets -----------------------------------------------------------------------
    std::string targets_manifest;
    auto* targets_cmd =
        app.add_subcommand("targets", "embedding targets applicable to an open book");
    targets_cmd->add_option("--manifest", targets_manifest, "open_book manifest")->required();

    // ---- obstruct-chern ---------------------------------------------------------------
    std::string chern_manifest;
    auto* chern_cmd =
        app.add_subcommand("obstruct-chern", "Chern-class obstruction computations");
    chern_cmd->add_option("--manifest", chern_manifest, "chern_instance manifest")->required();

    // ---- ledgers ---------------------------------------------------------------------
    int l5_genus = 0;
    auto* l5_cmd = app.add_subcommand("ledger-s5", "handle ledger for the S5 embedding");
    l5_cmd->add_option("--genus", l5_genus, "Heegaard genus of the embedded 3-manifold")
        ->required();

    int l23_genus = 0;
    std::string l23_obstructions;
    auto* l23_cmd =
        app.add_subcommand("ledger-s2s3", "handle ledger for the sphere-product embedding");
    l23_cmd->add_option("--genus", l23_genus, "Heegaard genus")->required();
    l23_cmd->add_option("--obstructions", l23_obstructions,
                        "comma-separated o_j, one per Heegaard handle");

    // ---- contact-check ------------------------------------------------------------------
    std::string cc_profile = "circle", cc_manifest, cc_grid = "64x64";
    std::optional<double> cc_k;
    auto* cc_cmd =
        app.add_subcommand("contact-check", "certify the collar contact inequality");
    cc_cmd->add_option("--profile", cc_profile, "constant | circle | synthetic");
    cc_cmd->add_option("--manifest", cc_manifest, "collar_profile manifest (overrides --profile)");
    cc_cmd->add_option("--grid", cc_grid, "t x s sample counts, e.g. 64x64");
    cc_cmd->add_option("--k", cc_k, "verify positivity at this k instead of minimizing");

    // ---- paper-verify ---------------------------------------------------------------------
    std::uint64_t pv_seed = spunembed::acceptance::default_seed;
    auto* pv_cmd = app.add_subcommand(
        "paper-verify", "replay the full calibration and certification suite");
    pv_cmd->add_option("--seed", pv_seed, "seed for the randomized sections");

    CLI11_PARSE(app, argc, argv);

    if (snf_cmd->parsed()) {
        json mj;
        try {
            mj = json::parse(snf_matrix);
        } catch (const json::parse_error& e) {
            throw spunembed::ManifestError("bad --matrix: " + std::string(e.what()));
        }
        spunembed::IntMatrix m = matrix_from_json(mj);
        spunembed::SmithDecomposition snf = spunembed::smith_normal_form(m);
        json out{{"u", matrix_to_json(snf.u)},
                 {"d", matrix_to_json(snf.d)},
                 {"v", matrix_to_json(snf.v)},
                 {"cokernel", spunembed::to_string(spunembed::cokernel_presentation(m))}};
        std::cout << out.dump(2) << "\n";
        return exit_ok;
    }

    if (h1_cmd->parsed()) {
        spunembed::AbelianGroupPresentation h1;
        if (!h1_manifest.empty()) {
            h1 = spunembed::first_homology(
                spunembed::manifest::open_book_from_json(load_manifest(h1_manifest)));
        } else if (!h1_preset.empty()) {
            h1 = spunembed::first_homology(spunembed::boundary_open_book(
                spunembed::preset(spunembed::preset_from_name(h1_preset), h1_genus)));
        } else {
            throw spunembed::ManifestError("h1-openbook needs --preset or --manifest");
        }
        std::cout << "H1 = " << spunembed::to_string(h1) << "\n";
        return exit_ok;
    }

    if (arf_cmd->parsed()) {
        std::vector<std::uint8_t> bits = parse_bits(arf_form);
        int genus = arf_genus > 0 ? arf_genus : static_cast<int>(bits.size() / 2);
        spunembed::QuadraticForm q(genus, bits);
        std::cout << "Arf = " << int(spunembed::arf(q)) << "\n";
        return exit_ok;
    }

    if (orbit_cmd->parsed()) {
        spunembed::CurveRegistry reg = spunembed::standard_registry(orbit_genus);
        std::vector<spunembed::CurveClass> alphabet =
            orbit_alphabet.empty() ? reg.curves()
                                   : alphabet_from_names(reg, parse_names(orbit_alphabet));
        spunembed::QuadraticForm q(orbit_genus, parse_bits(orbit_form));
        auto orb = spunembed::orbit(q, alphabet);
        std::cout << "orbit size = " << orb.size() << ", Arf = " << int(spunembed::arf(q))
                  << "\n";
        return exit_ok;
    }

    if (ff_cmd->parsed()) {
        spunembed::CurveRegistry reg = spunembed::standard_registry(ff_genus);
        auto forms = spunembed::fixed_forms(alphabet_from_names(reg, parse_names(ff_alphabet)));
        std::cout << forms.size() << " fixed form(s)\n";
        for (const auto& q : forms) {
            std::cout << "  q = ";
            for (std::size_t i = 0; i < q.basis_values().size(); ++i)
                std::cout << (i ? "," : "") << int(q.basis_values()[i]);
            std::cout << "  (Arf " << int(spunembed::arf(q)) << ")\n";
        }
        return exit_ok;
    }

    if (ng_cmd->parsed()) {
        spunembed::CurveRegistry reg = spunembed::standard_registry(ng_genus);
        auto cert = spunembed::non_generation_certificate(
            alphabet_from_names(reg, parse_names(ng_alphabet)));
        if (!cert) {
            std::cout << "none: no spin structure is fixed by every twist in the alphabet\n";
            return exit_ok;
        }
        if (!cert->verified()) {
            std::cout << "certificate failed its own replay\n";
            return exit_verification_failure;
        }
        write_output(ng_out, spunembed::manifest::to_json(*cert));
        return exit_ok;
    }

    if (embed_cmd->parsed()) {
        spunembed::OpenBookDescriptor ob =
            spunembed::manifest::open_book_from_json(load_manifest(embed_manifest));
        spunembed::EmbeddingCertificate cert =
            spunembed::certify(ob, spunembed::target_from_name(embed_target));
        spunembed::CheckReport rep = spunembed::verify(cert);
        write_output(embed_out, spunembed::manifest::to_json(cert));
        std::cout << "theorem tag: " << cert.tag << "\n" << rep;
        return rep.all_pass() ? exit_ok : exit_verification_failure;
    }

    if (vc_cmd->parsed()) {
        spunembed::EmbeddingCertificate cert =
            spunembed::manifest::certificate_from_json(load_manifest(vc_manifest));
        spunembed::CheckReport rep = spunembed::verify(cert);
        std::cout << "theorem tag: " << cert.tag << "\n" << rep;
        return rep.all_pass() ? exit_ok : exit_verification_failure;
    }

    if (targets_cmd->parsed()) {
        spunembed::OpenBookDescriptor ob =
            spunembed::manifest::open_book_from_json(load_manifest(targets_manifest));
        auto options = spunembed::applicable_targets(ob);
        if (options.empty()) {
            std::cout << "no applicable targets: the word uses curves outside every "
                         "bundled vanishing-cycle alphabet\n";
            return exit_ok;
        }
        for (const auto& opt : options)
            std::cout << spunembed::target_name(opt.target) << " ("
                      << (opt.contact ? "contact" : "smooth") << ", " << opt.tag << "): "
                      << opt.reason << "\n";
        return exit_ok;
    }

    if (chern_cmd->parsed()) {
        spunembed::manifest::ChernInstance inst =
            spunembed::manifest::chern_from_json(load_manifest(chern_manifest));
        if (inst.mode == "pullback") {
            bool ok = spunembed::pullback_condition(*inst.ambient, *inst.map, *inst.embedded);
            std::cout << "[chern-pullback-identity] "
                      << (ok ? "pass: pullback of the ambient class equals the embedded class"
                             : "fail: classes differ, embedding obstructed")
                      << "\n";
            return ok ? exit_ok : exit_verification_failure;
        }
        if (inst.mode == "s2s3_constraint") {
            auto c = spunembed::s2s3_target_constraint(inst.witnesses);
            if (c.inconclusive) {
                std::cout << "[sphere-product-divisibility] inconclusive: every witness "
                             "Chern number is zero, all k admissible\n";
                return exit_ok;
            }
            std::cout << "[sphere-product-divisibility] admissible k:";
            for (long long k : c.admissible) std::cout << " +-" << k;
            std::cout << " (k = 0 excluded by a nonzero witness)\n";
            return exit_ok;
        }
        long long d = spunembed::difference_class(inst.c1_eta, inst.c1_eta_prime);
        std::cout << "[difference-class-identity] d = " << d << "\n";
        return exit_ok;
    }

    if (l5_cmd->parsed()) {
        spunembed::HandleLedger led = spunembed::build_s5_ledger(l5_genus);
        std::cout << spunembed::render(led);
        spunembed::CheckReport rep = spunembed::verify_ledger(led);
        std::cout << rep;
        return rep.all_pass() ? exit_ok : exit_verification_failure;
    }

    if (l23_cmd->parsed()) {
        std::vector<long long> o = parse_ints(l23_obstructions);
        if (o.empty() && l23_genus > 0)
            o.assign(static_cast<std::size_t>(l23_genus), 0);
        spunembed::HandleLedger led = spunembed::build_s2s3_ledger(l23_genus, o);
        std::cout << spunembed::render(led);
        spunembed::CheckReport rep = spunembed::verify_ledger(led);
        std::cout << rep;
        return rep.all_pass() ? exit_ok : exit_verification_failure;
    }

    if (cc_cmd->parsed()) {
        spunembed::CollarProfile profile =
            cc_manifest.empty()
                ? spunembed::profiles::by_name(cc_profile)
                : spunembed::manifest::collar_profile_from_json(load_manifest(cc_manifest));
        auto x = cc_grid.find('x');
        if (x == std::string::npos)
            throw spunembed::ManifestError("--grid must look like 64x64");
        spunembed::GridSpec grid{std::stoull(cc_grid.substr(0, x)),
                                 std::stoull(cc_grid.substr(x + 1)), 2};
        if (cc_k) {
            spunembed::CheckReport rep = spunembed::verify_form_positive(*cc_k, profile, grid);
            std::cout << rep;
            return rep.all_pass() ? exit_ok : exit_verification_failure;
        }
        spunembed::CollarReport r = spunembed::collar_min_k(profile, grid);
        std::cout << "profile: " << profile.family() << "\n"
                  << "grid: " << r.t_samples << "x" << r.s_samples << "\n"
                  << "min dtB = " << r.min_dtB << " at t = " << r.min_t << ", s = " << r.min_s
                  << "\n"
                  << "fd error estimate = " << r.fd_error_estimate << "\n"
                  << "margin = " << r.margin << "\n"
                  << "closed-vs-fd disagreement = " << r.closed_vs_fd_disagreement << "\n"
                  << "k_star = " << r.k_star << "\n";
        return exit_ok;
    }

    if (pv_cmd->parsed()) {
        std::cout << "seed = " << pv_seed << "\n";
        bool all = true;
        for (const auto& r : spunembed::run_acceptance(pv_seed)) {
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
            all = all && r.pass;
        }
        std::cout << (all ? "all criteria passed\n" : "SOME CRITERIA FAILED\n");
        return all ? exit_ok : exit_verification_failure;
    }

    return exit_usage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const spunembed::ManifestError& e) {
        std::cerr << "manifest error: " << e.what() << "\n";
        return exit_usage;
    } catch (const spunembed::AlphabetError& e) {
        std::cerr << "alphabet error: " << e.what() << "\n";
        return exit_verification_failure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_verification_failure;
    }
}

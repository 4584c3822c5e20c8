#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "voxpath/audio.hpp"
#include "voxpath/colliculus.hpp"
#include "voxpath/harness.hpp"
#include "voxpath/modspec.hpp"

namespace {

voxpath::Signal load_at_pipeline_rate(const std::string& wav, double rate) {
    return voxpath::resample(voxpath::read_wav(wav), rate);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"voxpath - pathological voice feature extraction and evaluation"};
    app.require_subcommand(1);

    // extract
    std::string manifest_path, out_path;
    voxpath::ExtractConfig ecfg;
    auto* extract = app.add_subcommand("extract", "extract the feature matrix for a manifest");
    extract->add_option("--manifest", manifest_path, "manifest CSV (path,label,speaker,gender)")
        ->required();
    extract->add_option("--out", out_path, "output feature CSV")->required();
    extract->add_option("--frame-ms", ecfg.frame_ms, "analysis frame length, ms");
    extract->add_option("--hop-ms", ecfg.hop_ms, "frame hop, ms");
    extract->add_option("--seed", ecfg.seed, "seed echoed into the metadata sidecar");

    // select
    std::string features_path, pvalues_path;
    double alpha = 0.05;
    auto* select = app.add_subcommand("select", "Mann-Whitney feature filtering");
    select->add_option("--features", features_path, "feature CSV from extract")->required();
    select->add_option("--alpha", alpha, "significance level");
    select->add_option("--out", pvalues_path, "p-value CSV output")->required();

    // experiment
    std::string exp_features, report_path;
    voxpath::ExperimentConfig xcfg;
    auto* experiment = app.add_subcommand("experiment", "repeated split classification protocol");
    experiment->add_option("--features", exp_features, "feature CSV from extract")->required();
    experiment->add_option("--classifier", xcfg.classifier, "knn or forest")
        ->check(CLI::IsMember({"knn", "forest"}));
    experiment->add_option("--reps", xcfg.repetitions, "number of repetitions");
    experiment->add_option("--seed", xcfg.seed, "master seed");
    experiment->add_option("--alpha", xcfg.alpha, "selection significance level");
    experiment->add_option("--out", report_path, "report JSON output")->required();

    // psi
    std::string psi_wav, psi_out;
    auto* psi = app.add_subcommand("psi", "emit the modulation-spectrum profile of a recording");
    psi->add_option("--wav", psi_wav, "input WAV")->required();
    psi->add_option("--out", psi_out, "CSV output (mod_freq_hz, psi)")->required();

    // xi
    std::string xi_wav, xi_out;
    auto* xi = app.add_subcommand("xi", "emit the colliculus band profile of a recording");
    xi->add_option("--wav", xi_wav, "input WAV")->required();
    xi->add_option("--out", xi_out, "CSV output (band_index, xi)")->required();

    // rule30
    std::size_t rule_n = 0;
    auto* rule30 = app.add_subcommand("rule30", "minimum reliable error rate for n trials");
    rule30->add_option("--n", rule_n, "number of trials")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed()) {
            const auto manifest = voxpath::load_manifest(manifest_path);
            auto result = voxpath::extract_all(manifest, ecfg);
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
            voxpath::write_feature_csv(out_path, result);
            voxpath::write_extract_sidecar(out_path, result);
            std::cout << "wrote " << result.matrix.n_rows() << " rows x "
                      << result.matrix.n_cols() << " features to " << out_path << '\n';
        } else if (select->parsed()) {
            const auto result = voxpath::read_feature_csv(features_path);
            const auto sel = voxpath::select_features(result.matrix, alpha);
            voxpath::write_pvalue_csv(pvalues_path, sel);
            if (sel.fallback)
                std::cerr << "warning: no feature passed alpha; falling back to all columns\n";
            std::cout << sel.selected.size() << " features selected at alpha=" << alpha << '\n';
            const std::size_t top = std::min<std::size_t>(10, sel.p_sorted.size());
            for (std::size_t i = 0; i < top; ++i)
                std::printf("  %-40s p=%.4g\n", sel.p_sorted[i].first.c_str(),
                            sel.p_sorted[i].second);
        } else if (experiment->parsed()) {
            const auto result = voxpath::read_feature_csv(exp_features);
            const auto report = voxpath::run_experiment(result.matrix, xcfg);
            voxpath::write_report_json(report_path, report);
            std::cout << voxpath::report_table(report);
        } else if (psi->parsed()) {
            const auto sig = load_at_pipeline_rate(psi_wav, 16000.0);
            const auto grid = voxpath::make_frames(sig, 25.0, 10.0, voxpath::Window::hamming);
            const auto fb = voxpath::mel_filterbank(20, grid.frame_len, sig.rate);
            const auto ms = voxpath::modulation_spectrum(grid, fb);
            std::ofstream f(psi_out);
            f << "mod_freq_hz,psi\n";
            for (std::size_t l = 0; l < ms.psi.size(); ++l)
                f << ms.mod_bin_hz * static_cast<double>(l) << ',' << ms.psi[l] << '\n';
            std::cout << "wrote " << ms.psi.size() << " bins to " << psi_out << '\n';
        } else if (xi->parsed()) {
            const auto sig = load_at_pipeline_rate(xi_wav, 16000.0);
            const auto grid = voxpath::make_frames(sig, 25.0, 10.0, voxpath::Window::hamming);
            const auto gb = voxpath::gammatone_bank(20, sig.rate, grid.frame_len);
            const auto icc = voxpath::icc_features(grid, gb);
            std::ofstream f(xi_out);
            f << "band_index,xi\n";
            for (std::size_t p = 0; p < icc.matrix.xi.size(); ++p)
                f << (p + 1) << ',' << icc.matrix.xi[p] << '\n';
            std::cout << "wrote " << icc.matrix.xi.size() << " bands to " << xi_out << '\n';
        } else if (rule30->parsed()) {
            std::printf("%.2f\n", voxpath::rule_of_30(rule_n));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

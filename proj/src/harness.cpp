#include "voxpath/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "voxpath/aggregate.hpp"
#include "voxpath/audio.hpp"
#include "voxpath/bispec.hpp"
#include "voxpath/classify.hpp"
#include "voxpath/colliculus.hpp"
#include "voxpath/emd.hpp"
#include "voxpath/entropy.hpp"
#include "voxpath/modspec.hpp"
#include "voxpath/parallel.hpp"
#include "voxpath/spectral.hpp"

namespace voxpath {

Manifest load_manifest(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open manifest " + path);
    const auto base = std::filesystem::path(path).parent_path();

    Manifest manifest;
    std::string line;
    bool header = true;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (header) {
            if (cells.size() < 2 || cells[0] != "path" || cells[1] != "label")
                throw FormatError("manifest header must start with path,label");
            header = false;
            continue;
        }
        if (cells.size() < 2) throw FormatError("manifest row with fewer than 2 cells");
        ManifestEntry e;
        std::filesystem::path p(cells[0]);
        e.path = p.is_absolute() ? p.string() : (base / p).string();
        if (cells[1] == "healthy")
            e.label = 0;
        else if (cells[1] == "pathological")
            e.label = 1;
        else
            throw FormatError("manifest label must be healthy or pathological, got " + cells[1]);
        if (cells.size() > 2) e.speaker = cells[2];
        if (cells.size() > 3) e.gender = cells[3];
        manifest.entries.push_back(std::move(e));
    }
    return manifest;
}

// ---------------------------------------------------------------- features

namespace {

const std::vector<std::string>& scalar_names() {
    static const std::vector<std::string> names = {
        "MSER", "MFP", "RPHM", "ICER", "RPHIC",
        "BCII", "HFEBC", "LFEBC", "LCBCER", "HCBCER", "LSBER", "HSBER", "BCMII", "BCPII",
        "IMF-SNR_TKEO", "IMF-SNR_SEO", "IMF-SNR_SHE", "IMF-SNR_RE", "IMF-SNR_ZCR",
        "IMF-NSR_TKEO", "IMF-NSR_SEO", "IMF-NSR_SHE", "IMF-NSR_RE",
        "IMF-FD",
    };
    return names;
}

const std::vector<std::string>& sequence_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v = {"UCPP", "IMF-CPP", "IMF-GNE",
                                      "BCMD", "BCPD", "BMD", "BPD"};
        for (KernelKind k : kAllKernels) v.push_back(std::string("AE_") + kernel_name(k));
        for (KernelKind k : kAllKernels) v.push_back(std::string("SE_") + kernel_name(k));
        return v;
    }();
    return names;
}

// Statistics of the finite entries; an all-missing sequence aggregates to
// 60 missing values.
void append_aggregated(std::vector<double>& row, const std::vector<double>& seq) {
    std::vector<double> finite;
    finite.reserve(seq.size());
    for (double v : seq)
        if (!is_missing(v)) finite.push_back(v);
    if (finite.empty()) {
        row.insert(row.end(), kStatCount, kMissing);
        return;
    }
    const auto stats = aggregate(finite);
    row.insert(row.end(), stats.begin(), stats.end());
}

}  // namespace

std::vector<std::string> feature_column_names() {
    std::vector<std::string> names = scalar_names();
    for (const auto& seq : sequence_names())
        for (StatId id : all_stats()) names.push_back(seq + "__" + stat_name(id));
    return names;
}

std::vector<double> extract_features(const Signal& sig_in, const ExtractConfig& cfg) {
    const Signal sig = resample(sig_in, cfg.rate);
    const FrameGrid ham = make_frames(sig, cfg.frame_ms, cfg.hop_ms, Window::hamming);
    const FrameGrid rect = make_frames(sig, cfg.frame_ms, cfg.hop_ms, Window::rectangular);
    const std::size_t m_count = rect.frame_count();

    std::vector<double> row;
    row.reserve(scalar_names().size() + sequence_names().size() * kStatCount);

    // modulation spectra
    double mser = kMissing, mfp = kMissing, rphm = kMissing;
    try {
        const auto fb = mel_filterbank(cfg.mel_filters, ham.frame_len, sig.rate);
        const auto mf = modulation_features(modulation_spectrum(ham, fb));
        mser = mf.mser;
        mfp = mf.mfp;
        rphm = mf.rphm;
    } catch (const std::runtime_error&) {
    }
    row.push_back(mser);
    row.push_back(mfp);
    row.push_back(rphm);

    // inferior colliculus
    double icer = kMissing, rphic = kMissing;
    try {
        const auto gb = gammatone_bank(20, sig.rate, ham.frame_len);
        const auto icc = icc_features(ham, gb);
        icer = icc.icer;
        rphic = icc.rphic;
    } catch (const std::runtime_error&) {
    }
    row.push_back(icer);
    row.push_back(rphic);

    // higher-order spectra on truncated rectangular frames
    const std::size_t nb = bispec_frame_len(rect.frame_len);
    std::vector<std::vector<double>> bframes(m_count);
    for (std::size_t m = 0; m < m_count; ++m)
        bframes[m].assign(rect.frames[m].begin(), rect.frames[m].begin() + nb);
    const BispecAnalysis ba = analyze_bispec(bframes, sig.rate, cfg.f_max);
    row.push_back(ba.features.bcii);
    row.push_back(ba.features.hfebc);
    row.push_back(ba.features.lfebc);
    row.push_back(ba.features.lcbcer);
    row.push_back(ba.features.hcbcer);
    row.push_back(ba.features.lsber);
    row.push_back(ba.features.hsber);
    row.push_back(ba.interference.bcmii);
    row.push_back(ba.interference.bcpii);

    // recording-level EMD scalars
    ImfSet full_set;
    try {
        full_set = emd(sig.samples);
    } catch (const InsufficientDataError&) {
    }
    for (ImfParam p : {ImfParam::tkeo, ImfParam::seo, ImfParam::she, ImfParam::re, ImfParam::zcr})
        row.push_back(imf_snr(full_set, p));
    for (ImfParam p : {ImfParam::tkeo, ImfParam::seo, ImfParam::she, ImfParam::re})
        row.push_back(imf_nsr(full_set, p));
    row.push_back(full_set.count() >= 1 ? imf_fd(full_set) : kMissing);

    // per-frame sequences
    std::vector<double> ucpp(m_count, kMissing);
    for (std::size_t m = 0; m < m_count; ++m) {
        try {
            ucpp[m] = cepstral_peak_prominence(real_cepstrum(ham.frames[m]), sig.rate, cfg.f_max);
        } catch (const std::runtime_error&) {
        }
    }

    std::vector<double> imf_cpp_seq(m_count, kMissing), imf_gne_seq(m_count, kMissing);
    for (std::size_t m = 0; m < m_count; ++m) {
        ImfSet set;
        try {
            set = emd(rect.frames[m]);
        } catch (const InsufficientDataError&) {
            continue;
        }
        if (set.count() < 1) continue;
        imf_cpp_seq[m] = imf_cpp(set, sig.rate, cfg.f_max);
        imf_gne_seq[m] = gne_from_first_imf(set.imfs[0], sig.rate);
    }

    std::vector<std::vector<double>> entropy_seq(16, std::vector<double>(m_count, kMissing));
    for (std::size_t m = 0; m < m_count; ++m) {
        try {
            const auto values = entropy_all_kernels(rect.frames[m]);
            for (std::size_t k = 0; k < 16; ++k) entropy_seq[k][m] = values[k];
        } catch (const std::runtime_error&) {
        }
    }

    append_aggregated(row, ucpp);
    append_aggregated(row, imf_cpp_seq);
    append_aggregated(row, imf_gne_seq);
    append_aggregated(row, ba.distances.bcmd);
    append_aggregated(row, ba.distances.bcpd);
    append_aggregated(row, ba.distances.bmd);
    append_aggregated(row, ba.distances.bpd);
    for (std::size_t k = 0; k < 16; ++k) append_aggregated(row, entropy_seq[k]);

    return row;
}

ExtractResult extract_all(const Manifest& manifest, const ExtractConfig& cfg) {
    const std::size_t n = manifest.entries.size();
    std::vector<std::vector<double>> rows(n);
    std::vector<std::string> errors(n);

    parallel_for(n, [&](std::size_t i) {
        const auto& entry = manifest.entries[i];
        try {
            const Signal sig = read_wav(entry.path);
            rows[i] = extract_features(sig, cfg);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });

    ExtractResult out;
    out.config = cfg;
    out.matrix.column_names = feature_column_names();
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].empty()) {
            out.warnings.push_back("skipped " + manifest.entries[i].path + ": " + errors[i]);
            continue;
        }
        out.matrix.rows.push_back(std::move(rows[i]));
        out.matrix.labels.push_back(manifest.entries[i].label);
        out.matrix.speakers.push_back(manifest.entries[i].speaker);
        out.paths.push_back(manifest.entries[i].path);
        out.genders.push_back(manifest.entries[i].gender);
    }
    return out;
}

// ---------------------------------------------------------------- metrics

double acc_percent(const Confusion& c) {
    const double total = static_cast<double>(c.tp + c.tn + c.fp + c.fn);
    return total == 0.0 ? kMissing : 100.0 * static_cast<double>(c.tp + c.tn) / total;
}

double sen_percent(const Confusion& c) {
    const double den = static_cast<double>(c.tp + c.fn);
    return den == 0.0 ? kMissing : 100.0 * static_cast<double>(c.tp) / den;
}

double spe_percent(const Confusion& c) {
    const double den = static_cast<double>(c.tn + c.fp);
    return den == 0.0 ? kMissing : 100.0 * static_cast<double>(c.tn) / den;
}

double rule_of_30(std::size_t n_trials) {
    if (n_trials == 0) throw std::invalid_argument("rule_of_30 needs n > 0");
    return 100.0 * 30.0 / static_cast<double>(n_trials);
}

// ---------------------------------------------------------------- protocol

namespace {

struct SplitUnit {
    std::vector<std::size_t> rows;
    int label = 0;
};

template <typename Rng>
void fisher_yates(std::vector<std::size_t>& idx, Rng& rng) {
    for (std::size_t i = idx.size(); i > 1; --i)
        std::swap(idx[i - 1], idx[rng() % i]);
}

FeatureMatrix take_rows(const FeatureMatrix& fm, const std::vector<std::size_t>& rows) {
    FeatureMatrix out;
    out.column_names = fm.column_names;
    for (std::size_t r : rows) {
        out.rows.push_back(fm.rows[r]);
        out.labels.push_back(fm.labels[r]);
        if (!fm.speakers.empty()) out.speakers.push_back(fm.speakers[r]);
    }
    return out;
}

// missing entries impute to the (normalized) train mean, i.e. zero
Dataset to_dataset(const FeatureMatrix& fm, const std::vector<std::size_t>& cols) {
    Dataset ds;
    ds.y = fm.labels;
    ds.x.reserve(fm.n_rows());
    for (const auto& row : fm.rows) {
        std::vector<double> x;
        x.reserve(cols.size());
        for (std::size_t c : cols) x.push_back(is_missing(row[c]) ? 0.0 : row[c]);
        ds.x.push_back(std::move(x));
    }
    return ds;
}

MeanStd mean_std(const std::vector<double>& v) {
    MeanStd ms;
    if (v.empty()) return ms;
    double sum = 0.0;
    for (double x : v) sum += x;
    ms.mean = sum / static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - ms.mean) * (x - ms.mean);
        ms.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return ms;
}

}  // namespace

ExperimentReport run_experiment(const FeatureMatrix& fm, const ExperimentConfig& cfg) {
    std::size_t class_rows[2] = {0, 0};
    for (int l : fm.labels) ++class_rows[l == 1];
    if (class_rows[0] < 4 || class_rows[1] < 4)
        throw InsufficientDataError("run_experiment needs >= 4 rows per class");

    // split units: speakers when any id repeats, otherwise single rows
    bool speaker_disjoint = false;
    {
        std::vector<std::string> ids;
        for (const auto& s : fm.speakers)
            if (!s.empty()) ids.push_back(s);
        std::sort(ids.begin(), ids.end());
        speaker_disjoint = std::adjacent_find(ids.begin(), ids.end()) != ids.end();
    }

    std::vector<SplitUnit> units[2];
    if (speaker_disjoint) {
        std::vector<std::pair<std::string, std::size_t>> by_speaker;
        for (std::size_t r = 0; r < fm.n_rows(); ++r) by_speaker.emplace_back(fm.speakers[r], r);
        std::sort(by_speaker.begin(), by_speaker.end());
        for (std::size_t i = 0; i < by_speaker.size();) {
            std::size_t j = i;
            SplitUnit u;
            u.label = fm.labels[by_speaker[i].second];
            while (j < by_speaker.size() && by_speaker[j].first == by_speaker[i].first)
                u.rows.push_back(by_speaker[j++].second);
            units[u.label == 1].push_back(std::move(u));
            i = j;
        }
    } else {
        for (std::size_t r = 0; r < fm.n_rows(); ++r)
            units[fm.labels[r] == 1].push_back({{r}, fm.labels[r]});
    }

    ExperimentReport report;
    report.config = cfg;
    report.repetitions.resize(cfg.repetitions);
    std::vector<std::string> failures(cfg.repetitions);

    parallel_for(cfg.repetitions, [&](std::size_t rep) {
        const std::uint64_t rep_seed = cfg.seed + rep;
        std::mt19937_64 rng(rep_seed);

        std::vector<std::size_t> train_rows, test_rows;
        bool ok = false;
        for (int attempt = 0; attempt < 10 && !ok; ++attempt) {
            train_rows.clear();
            test_rows.clear();
            bool train_has[2] = {false, false}, test_has[2] = {false, false};
            for (int cls = 0; cls < 2; ++cls) {
                std::vector<std::size_t> order(units[cls].size());
                for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
                fisher_yates(order, rng);
                const auto target = static_cast<std::size_t>(
                    std::llround(cfg.train_fraction * static_cast<double>(class_rows[cls])));
                std::size_t taken = 0;
                for (std::size_t i : order) {
                    const auto& u = units[cls][i];
                    auto& dest = (taken < target) ? train_rows : test_rows;
                    ((taken < target) ? train_has : test_has)[cls] = true;
                    for (std::size_t r : u.rows) dest.push_back(r);
                    taken += u.rows.size();
                }
            }
            ok = train_has[0] && train_has[1] && test_has[0] && test_has[1];
        }
        if (!ok) {
            failures[rep] = "could not draw a stratified split with both classes";
            return;
        }
        std::sort(train_rows.begin(), train_rows.end());
        std::sort(test_rows.begin(), test_rows.end());

        const FeatureMatrix train = take_rows(fm, train_rows);
        const FeatureMatrix test = take_rows(fm, test_rows);

        const ZScaler scaler = zscore_fit(train);
        const FeatureMatrix train_n = zscore_apply(scaler, train);
        const FeatureMatrix test_n = zscore_apply(scaler, test);

        const SelectionResult sel = select_features(train_n, cfg.alpha);

        const Dataset train_ds = to_dataset(train_n, sel.selected);
        const Dataset test_ds = to_dataset(test_n, sel.selected);

        RepetitionResult& rr = report.repetitions[rep];
        rr.n_selected = sel.selected.size();
        rr.selection_fallback = sel.fallback;

        std::vector<int> pred;
        if (cfg.classifier == "knn") {
            pred = classify_knn(train_ds, test_ds, cfg.knn_k);
        } else if (cfg.classifier == "forest") {
            const auto fr = classify_forest(train_ds, test_ds, cfg.forest_trees,
                                            rep_seed ^ 0x9E3779B97F4A7C15ULL);
            pred = fr.predictions;
            rr.oob_accuracy = fr.oob_accuracy;
        } else {
            failures[rep] = "unknown classifier " + cfg.classifier;
            return;
        }

        Confusion c;
        for (std::size_t i = 0; i < pred.size(); ++i) {
            if (test_ds.y[i] == 1)
                (pred[i] == 1 ? c.tp : c.fn)++;
            else
                (pred[i] == 0 ? c.tn : c.fp)++;
        }
        rr.acc = acc_percent(c);
        rr.sen = sen_percent(c);
        rr.spe = spe_percent(c);
    });

    for (const auto& f : failures)
        if (!f.empty()) throw std::runtime_error(f);

    std::vector<double> accs, sens, spes, nsels;
    for (const auto& r : report.repetitions) {
        accs.push_back(r.acc);
        sens.push_back(r.sen);
        spes.push_back(r.spe);
        nsels.push_back(static_cast<double>(r.n_selected));
    }
    report.acc = mean_std(accs);
    report.sen = mean_std(sens);
    report.spe = mean_std(spes);
    report.n_selected = mean_std(nsels);
    return report;
}

}  // namespace voxpath

// Copyright 2026 The PAAS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// paas: polarization-based anti-spoofing experiments.
// Subcommands: synth (dataset generation), dolp (single-frame inspection),
// train (Siamese embedding + SVM head), eval (metrics report).

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "paas/checkpoint.hpp"
#include "paas/image_io.hpp"
#include "paas/pipeline.hpp"

namespace fs = std::filesystem;
using namespace paas;

namespace {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

std::string format_metric(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

int cmd_synth(const std::string& config_path, const std::string& pack_name,
              const std::string& out_dir, std::uint64_t seed, int count, int width, int height,
              double split_ratio, const std::string& pattern_text) {
    std::vector<MaterialProfile> profiles;
    if (!config_path.empty())
        profiles = profiles_from_json(read_text_file(config_path));
    else if (pack_name == "default")
        profiles = default_profile_pack();
    else if (pack_name == "confusable")
        profiles = confusable_profile_pack();
    else
        throw ParameterError("unknown profile pack: " + pack_name);

    DatasetParams params;
    params.count_per_profile = count;
    params.width = width;
    params.height = height;
    params.split_ratio = split_ratio;
    params.pattern = MosaicPattern::parse(pattern_text);

    const DatasetManifest manifest = generate_dataset(profiles, params, out_dir, seed);

    std::map<std::string, std::pair<int, int>> counts;  // label -> (train, test)
    for (const auto& r : manifest.records)
        (r.split == "train" ? counts[r.label].first : counts[r.label].second)++;

    std::cout << "manifest: " << (fs::path(out_dir) / "manifest.jsonl").string() << "\n";
    for (const auto& [label, c] : counts)
        std::cout << label << ": " << c.first << " train, " << c.second << " test\n";
    return 0;
}

int cmd_dolp(const std::string& input, const std::string& pattern_text, const std::string& mode,
             const std::string& method, const std::string& out_path,
             const std::string& angles_prefix) {
    MosaicFrame frame;
    frame.plane = read_pgm(input);
    frame.pattern = MosaicPattern::parse(pattern_text);

    const DemosaicMethod dm =
        method == "nearest" ? DemosaicMethod::kNearest : DemosaicMethod::kBilinear;
    const DolpMode dolp_mode = mode == "paper" ? DolpMode::kPaperLiteral : DolpMode::kNormalized;

    const AngleImages angles = demosaic(frame, dm);
    const DolpImage d = dolp(stokes(angles), dolp_mode);

    if (!out_path.empty()) write_pfm(out_path, d.values);
    if (!angles_prefix.empty()) {
        write_pgm(angles_prefix + "_i0.pgm", angles.i0, 16);
        write_pgm(angles_prefix + "_i45.pgm", angles.i45, 16);
        write_pgm(angles_prefix + "_i90.pgm", angles.i90, 16);
        write_pgm(angles_prefix + "_i135.pgm", angles.i135, 16);
    }

    double lo = d.values.data[0], hi = d.values.data[0], sum = 0.0;
    for (double v : d.values.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    std::cout << "dolp min " << format_metric(lo) << " mean "
              << format_metric(sum / d.values.data.size()) << " max " << format_metric(hi)
              << "\n";
    return 0;
}

int cmd_train(const std::string& manifest_path, const std::string& out_dir,
              const std::string& channel_name, TrainConfig config, double svm_lambda,
              int svm_epochs) {
    const DatasetManifest manifest = read_manifest(manifest_path);
    const Channel channel = channel_from_string(channel_name);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());

    const std::vector<TrainSample> samples = load_train_samples(manifest, channel);
    const SiameseResult result = train_siamese(samples, config);
    const SvmModel head =
        train_svm_head(result.model, manifest, channel, config, svm_lambda, svm_epochs,
                       mix_seed(config.seed, 42));

    save_embedding_model((fs::path(out_dir) / "embed.ckpt").string(), result.model, config.seed,
                         config.to_json());
    save_svm_model((fs::path(out_dir) / "svm.ckpt").string(), head, config.seed);

    std::ofstream log((fs::path(out_dir) / "loss.csv").string(), std::ios::binary);
    if (!log) throw IoError("cannot write loss log in " + out_dir);
    log << "epoch,loss\n";
    for (std::size_t e = 0; e < result.epoch_loss.size(); ++e)
        log << e << "," << format_metric(result.epoch_loss[e]) << "\n";

    if (!result.epoch_loss.empty())
        std::cout << "final epoch loss " << format_metric(result.epoch_loss.back()) << "\n";
    std::cout << "checkpoints written to " << out_dir << "\n";
    return 0;
}

void write_roc_csv(const std::string& path, const RocCurve& curve) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "fpr,tpr,threshold\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i)
        out << format_metric(curve.points[i].fpr) << "," << format_metric(curve.points[i].tpr)
            << "," << format_metric(curve.thresholds[i]) << "\n";
}

int cmd_eval(const std::string& manifest_path, const std::string& models_dir,
             const std::string& out_dir, const std::string& channels_arg,
             const std::string& methods_arg) {
    const DatasetManifest manifest = read_manifest(manifest_path);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());

    const auto channels = split_csv(channels_arg);
    const auto methods = split_csv(methods_arg);
    if (channels.empty() || methods.empty())
        throw ParameterError("need at least one channel and one method");

    EmbeddingModel model{NetSpec{}};
    SvmModel head;
    TrainConfig train_cfg;
    const bool wants_paas =
        std::find(methods.begin(), methods.end(), "paas") != methods.end();
    if (wants_paas) {
        model = load_embedding_model((fs::path(models_dir) / "embed.ckpt").string());
        head = load_svm_model((fs::path(models_dir) / "svm.ckpt").string());
        const Checkpoint ckpt = read_checkpoint((fs::path(models_dir) / "embed.ckpt").string());
        if (ckpt.config.empty())
            throw DataError("embed checkpoint lacks the training config snapshot");
        train_cfg = TrainConfig::from_json(ckpt.config);
    }

    std::ofstream report((fs::path(out_dir) / "report.csv").string(), std::ios::binary);
    if (!report) throw IoError("cannot write report in " + out_dir);
    report << "channel,method,eer,tpr_at_1e2,tpr_at_1e3\n";

    for (const std::string& channel_name : channels) {
        const Channel channel = channel_from_string(channel_name);
        for (const std::string& method : methods) {
            ScoreSet scores;
            if (method == "paas") {
                scores = siamese_scores(model, head, manifest.split("test"), manifest.base_dir,
                                        channel, train_cfg);
            } else if (method == "lbp") {
                scores = lbp_baseline_scores(manifest, channel);
            } else {
                scores = scalar_baseline_scores(manifest, channel, method);
            }
            const MetricsRow row = metrics_from_scores(scores, channel_name, method);
            report << row.channel << "," << row.method << "," << format_metric(row.eer) << ","
                   << format_metric(row.tpr_at_1e2) << "," << format_metric(row.tpr_at_1e3)
                   << "\n";
            write_roc_csv((fs::path(out_dir) / ("roc_" + method + "_" + channel_name + ".csv"))
                              .string(),
                          roc(scores));
            std::cout << channel_name << "/" << method << ": EER " << format_metric(row.eer)
                      << "\n";
        }
    }
    std::cout << "report written to " << (fs::path(out_dir) / "report.csv").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polarization-based face anti-spoofing toolkit"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic labeled dataset");
    std::string synth_config, synth_pack = "default", synth_out = "data";
    std::string synth_pattern = "0,45;90,135";
    std::uint64_t synth_seed = 1;
    int synth_count = 10, synth_w = 64, synth_h = 64;
    double synth_split = 0.8;
    synth->add_option("--config", synth_config, "profile pack JSON file");
    synth->add_option("--pack", synth_pack, "built-in pack: default|confusable");
    synth->add_option("--out", synth_out, "output directory");
    synth->add_option("--seed", synth_seed, "master seed");
    synth->add_option("--count", synth_count, "samples per profile");
    synth->add_option("--width", synth_w, "frame width");
    synth->add_option("--height", synth_h, "frame height");
    synth->add_option("--split", synth_split, "train fraction");
    synth->add_option("--pattern", synth_pattern, "mosaic pattern, e.g. 0,45;90,135");

    // dolp
    auto* dolp_cmd = app.add_subcommand("dolp", "demosaic a raw mosaic PGM and compute DOLP");
    std::string dolp_input, dolp_out, dolp_angles_prefix;
    std::string dolp_pattern = "0,45;90,135", dolp_mode = "normalized", dolp_method = "bilinear";
    dolp_cmd->add_option("--input", dolp_input, "input mosaic PGM")->required();
    dolp_cmd->add_option("--pattern", dolp_pattern, "mosaic pattern");
    dolp_cmd->add_option("--dolp-mode", dolp_mode, "normalized|paper");
    dolp_cmd->add_option("--method", dolp_method, "bilinear|nearest");
    dolp_cmd->add_option("--out", dolp_out, "output DOLP PFM path");
    dolp_cmd->add_option("--angles-prefix", dolp_angles_prefix,
                         "also write the four demosaiced angle PGMs with this prefix");

    // train
    auto* train = app.add_subcommand("train", "train the Siamese embedding and SVM head");
    std::string train_manifest, train_out = "models", train_channel = "dolp";
    TrainConfig train_cfg;
    double svm_lambda = 1e-3;
    int svm_epochs = 100;
    int embedding_dim = train_cfg.net.embedding_dim;
    train->add_option("--manifest", train_manifest, "dataset manifest JSONL")->required();
    train->add_option("--out", train_out, "output directory for checkpoints");
    train->add_option("--channel", train_channel, "dolp|gray");
    train->add_option("--epochs", train_cfg.epochs, "training epochs");
    train->add_option("--lr", train_cfg.learning_rate, "Adam learning rate");
    train->add_option("--seed", train_cfg.seed, "training seed");
    train->add_option("--margin", train_cfg.margin, "contrastive margin");
    train->add_option("--batch-pairs", train_cfg.batch_pairs, "pairs per batch");
    train->add_option("--embedding-dim", embedding_dim, "embedding dimension");
    train->add_option("--svm-lambda", svm_lambda, "SVM regularization");
    train->add_option("--svm-epochs", svm_epochs, "SVM epochs");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate methods on the test split");
    std::string eval_manifest, eval_models = "models", eval_out = "report";
    std::string eval_channels = "dolp", eval_methods = "mean,std,kurtosis,lbp,paas";
    eval_cmd->add_option("--manifest", eval_manifest, "dataset manifest JSONL")->required();
    eval_cmd->add_option("--models", eval_models, "directory with embed.ckpt and svm.ckpt");
    eval_cmd->add_option("--out", eval_out, "output directory for report CSVs");
    eval_cmd->add_option("--channel", eval_channels, "comma-separated: dolp,gray");
    eval_cmd->add_option("--methods", eval_methods,
                         "comma-separated subset of mean,std,kurtosis,lbp,paas");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed())
            return cmd_synth(synth_config, synth_pack, synth_out, synth_seed, synth_count,
                             synth_w, synth_h, synth_split, synth_pattern);
        if (dolp_cmd->parsed())
            return cmd_dolp(dolp_input, dolp_pattern, dolp_mode, dolp_method, dolp_out,
                            dolp_angles_prefix);
        if (train->parsed()) {
            train_cfg.net.embedding_dim = embedding_dim;
            return cmd_train(train_manifest, train_out, train_channel, train_cfg, svm_lambda,
                             svm_epochs);
        }
        if (eval_cmd->parsed())
            return cmd_eval(eval_manifest, eval_models, eval_out, eval_channels, eval_methods);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

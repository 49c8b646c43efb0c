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

#include "paas/net.hpp"

#include <cmath>

#include <json.hpp>

#include "paas/rng.hpp"

namespace paas {

namespace {
constexpr int kKernel = 3;
constexpr int kPad = 1;

int conv_out_side(int in_side, int stride) { return (in_side + 2 * kPad - kKernel) / stride + 1; }
}  // namespace

void NetSpec::validate() const {
    if (input_side < 4) throw ParameterError("input_side must be >= 4");
    if (input_channels < 1) throw ParameterError("input_channels must be >= 1");
    if (fc_hidden < 1 || embedding_dim < 1) throw ParameterError("fc dims must be >= 1");
    int side = input_side;
    for (const auto& s : convs) {
        if (s.out_channels < 1 || s.stride < 1) throw ParameterError("bad conv stage");
        side = conv_out_side(side, s.stride);
        if (side < 1) throw ParameterError("conv stages shrink input below 1 pixel");
    }
}

std::string NetSpec::to_json() const {
    nlohmann::ordered_json j;
    j["input_side"] = input_side;
    j["input_channels"] = input_channels;
    j["convs"] = nlohmann::ordered_json::array();
    for (const auto& s : convs)
        j["convs"].push_back({{"out_channels", s.out_channels}, {"stride", s.stride}});
    j["fc_hidden"] = fc_hidden;
    j["embedding_dim"] = embedding_dim;
    return j.dump();
}

NetSpec NetSpec::from_json(const std::string& text) {
    NetSpec spec;
    try {
        const auto j = nlohmann::ordered_json::parse(text);
        spec.input_side = j.at("input_side").get<int>();
        spec.input_channels = j.at("input_channels").get<int>();
        spec.convs.clear();
        for (const auto& s : j.at("convs"))
            spec.convs.push_back({s.at("out_channels").get<int>(), s.at("stride").get<int>()});
        spec.fc_hidden = j.at("fc_hidden").get<int>();
        spec.embedding_dim = j.at("embedding_dim").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad net spec JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

namespace {

// Flat parameter layout: per conv stage W[out][in][3][3] then b[out],
// then FC1 W[hidden][c_last], b[hidden], FC2 W[emb][hidden], b[emb].
std::size_t total_params(const NetSpec& spec) {
    std::size_t n = 0;
    int in_c = spec.input_channels;
    for (const auto& s : spec.convs) {
        n += static_cast<std::size_t>(s.out_channels) * in_c * kKernel * kKernel + s.out_channels;
        in_c = s.out_channels;
    }
    n += static_cast<std::size_t>(spec.fc_hidden) * in_c + spec.fc_hidden;
    n += static_cast<std::size_t>(spec.embedding_dim) * spec.fc_hidden + spec.embedding_dim;
    return n;
}

}  // namespace

EmbeddingModel::EmbeddingModel(NetSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    params_.assign(total_params(spec_), 0.0);
}

EmbeddingModel::EmbeddingModel(NetSpec spec, std::uint64_t init_seed)
    : EmbeddingModel(std::move(spec)) {
    Rng rng(mix_seed(init_seed, 0xC0DE));
    std::size_t off = 0;
    int in_c = spec_.input_channels;
    for (const auto& s : spec_.convs) {
        const std::size_t nw = static_cast<std::size_t>(s.out_channels) * in_c * kKernel * kKernel;
        const double limit = std::sqrt(6.0 / (in_c * kKernel * kKernel));
        for (std::size_t i = 0; i < nw; ++i) params_[off + i] = rng.uniform(-limit, limit);
        off += nw + s.out_channels;  // biases stay zero
        in_c = s.out_channels;
    }
    {
        const std::size_t nw = static_cast<std::size_t>(spec_.fc_hidden) * in_c;
        const double limit = std::sqrt(6.0 / in_c);
        for (std::size_t i = 0; i < nw; ++i) params_[off + i] = rng.uniform(-limit, limit);
        off += nw + spec_.fc_hidden;
    }
    {
        const std::size_t nw = static_cast<std::size_t>(spec_.embedding_dim) * spec_.fc_hidden;
        const double limit = std::sqrt(6.0 / spec_.fc_hidden);
        for (std::size_t i = 0; i < nw; ++i) params_[off + i] = rng.uniform(-limit, limit);
    }
}

void EmbeddingModel::forward(const Tensor& x, ForwardCache& cache) const {
    if (x.c != spec_.input_channels || x.h != spec_.input_side || x.w != spec_.input_side)
        throw DimensionError("input tensor does not match model input shape");

    cache.input = x;
    cache.conv_pre.clear();
    cache.conv_post.clear();

    const Tensor* in = &cache.input;
    std::size_t off = 0;
    for (const auto& s : spec_.convs) {
        const int oh = conv_out_side(in->h, s.stride);
        const int ow = conv_out_side(in->w, s.stride);
        Tensor pre(s.out_channels, oh, ow);
        const double* W = params_.data() + off;
        const double* b = W + static_cast<std::size_t>(s.out_channels) * in->c * kKernel * kKernel;

        for (int oc = 0; oc < s.out_channels; ++oc)
            for (int oy = 0; oy < oh; ++oy)
                for (int ox = 0; ox < ow; ++ox) {
                    double acc = b[oc];
                    for (int ic = 0; ic < in->c; ++ic) {
                        const double* wk =
                            W + ((static_cast<std::size_t>(oc) * in->c + ic) * kKernel * kKernel);
                        for (int ky = 0; ky < kKernel; ++ky) {
                            const int iy = oy * s.stride + ky - kPad;
                            if (iy < 0 || iy >= in->h) continue;
                            for (int kx = 0; kx < kKernel; ++kx) {
                                const int ix = ox * s.stride + kx - kPad;
                                if (ix < 0 || ix >= in->w) continue;
                                acc += wk[ky * kKernel + kx] * in->at(ic, iy, ix);
                            }
                        }
                    }
                    pre.at(oc, oy, ox) = acc;
                }

        Tensor post = pre;
        for (double& v : post.v) v = v > 0.0 ? v : 0.0;
        off += static_cast<std::size_t>(s.out_channels) * in->c * kKernel * kKernel + s.out_channels;
        cache.conv_pre.push_back(std::move(pre));
        cache.conv_post.push_back(std::move(post));
        in = &cache.conv_post.back();
    }

    // Global average pooling.
    cache.gap.assign(in->c, 0.0);
    const double inv_area = 1.0 / (static_cast<double>(in->h) * in->w);
    for (int ci = 0; ci < in->c; ++ci) {
        double acc = 0.0;
        for (int y = 0; y < in->h; ++y)
            for (int x = 0; x < in->w; ++x) acc += in->at(ci, y, x);
        cache.gap[ci] = acc * inv_area;
    }

    // FC1 + ReLU.
    const int c_last = in->c;
    const double* W1 = params_.data() + off;
    const double* b1 = W1 + static_cast<std::size_t>(spec_.fc_hidden) * c_last;
    cache.fc1_pre.assign(spec_.fc_hidden, 0.0);
    cache.fc1_post.assign(spec_.fc_hidden, 0.0);
    for (int j = 0; j < spec_.fc_hidden; ++j) {
        double acc = b1[j];
        for (int i = 0; i < c_last; ++i) acc += W1[static_cast<std::size_t>(j) * c_last + i] * cache.gap[i];
        cache.fc1_pre[j] = acc;
        cache.fc1_post[j] = acc > 0.0 ? acc : 0.0;
    }
    off += static_cast<std::size_t>(spec_.fc_hidden) * c_last + spec_.fc_hidden;

    // FC2.
    const double* W2 = params_.data() + off;
    const double* b2 = W2 + static_cast<std::size_t>(spec_.embedding_dim) * spec_.fc_hidden;
    cache.embedding.assign(spec_.embedding_dim, 0.0);
    for (int j = 0; j < spec_.embedding_dim; ++j) {
        double acc = b2[j];
        for (int i = 0; i < spec_.fc_hidden; ++i)
            acc += W2[static_cast<std::size_t>(j) * spec_.fc_hidden + i] * cache.fc1_post[i];
        cache.embedding[j] = acc;
    }
}

std::vector<double> EmbeddingModel::embed(const Tensor& x) const {
    ForwardCache cache;
    forward(x, cache);
    return cache.embedding;
}

void EmbeddingModel::backward(const ForwardCache& cache, const std::vector<double>& d_embedding,
                              std::vector<double>& grad) const {
    if (d_embedding.size() != static_cast<std::size_t>(spec_.embedding_dim))
        throw DimensionError("d_embedding length mismatch");
    if (grad.size() != params_.size()) throw DimensionError("grad buffer length mismatch");

    const int c_last = cache.gap.empty() ? 0 : static_cast<int>(cache.gap.size());

    // Parameter offsets of the FC layers.
    std::size_t conv_end = 0;
    {
        int in_c = spec_.input_channels;
        for (const auto& s : spec_.convs) {
            conv_end += static_cast<std::size_t>(s.out_channels) * in_c * kKernel * kKernel +
                        s.out_channels;
            in_c = s.out_channels;
        }
    }
    const std::size_t fc1_off = conv_end;
    const std::size_t fc2_off =
        fc1_off + static_cast<std::size_t>(spec_.fc_hidden) * c_last + spec_.fc_hidden;

    // FC2 backward.
    const double* W2 = params_.data() + fc2_off;
    std::vector<double> d_fc1_post(spec_.fc_hidden, 0.0);
    for (int j = 0; j < spec_.embedding_dim; ++j) {
        const double g = d_embedding[j];
        for (int i = 0; i < spec_.fc_hidden; ++i) {
            grad[fc2_off + static_cast<std::size_t>(j) * spec_.fc_hidden + i] +=
                g * cache.fc1_post[i];
            d_fc1_post[i] += g * W2[static_cast<std::size_t>(j) * spec_.fc_hidden + i];
        }
        grad[fc2_off + static_cast<std::size_t>(spec_.embedding_dim) * spec_.fc_hidden + j] += g;
    }

    // FC1 backward through ReLU.
    const double* W1 = params_.data() + fc1_off;
    std::vector<double> d_gap(c_last, 0.0);
    for (int j = 0; j < spec_.fc_hidden; ++j) {
        const double g = cache.fc1_pre[j] > 0.0 ? d_fc1_post[j] : 0.0;
        if (g == 0.0) continue;
        for (int i = 0; i < c_last; ++i) {
            grad[fc1_off + static_cast<std::size_t>(j) * c_last + i] += g * cache.gap[i];
            d_gap[i] += g * W1[static_cast<std::size_t>(j) * c_last + i];
        }
        grad[fc1_off + static_cast<std::size_t>(spec_.fc_hidden) * c_last + j] += g;
    }

    // GAP backward: spread each channel gradient uniformly.
    const Tensor& last = cache.conv_post.empty() ? cache.input : cache.conv_post.back();
    Tensor d_act(last.c, last.h, last.w);
    const double inv_area = 1.0 / (static_cast<double>(last.h) * last.w);
    for (int ci = 0; ci < last.c; ++ci) {
        const double g = d_gap[ci] * inv_area;
        for (int y = 0; y < last.h; ++y)
            for (int x = 0; x < last.w; ++x) d_act.at(ci, y, x) = g;
    }

    // Conv stages in reverse.
    std::size_t off = conv_end;
    for (int si = static_cast<int>(spec_.convs.size()) - 1; si >= 0; --si) {
        const auto& s = spec_.convs[si];
        const Tensor& in = si == 0 ? cache.input : cache.conv_post[si - 1];
        const Tensor& pre = cache.conv_pre[si];
        off -= static_cast<std::size_t>(s.out_channels) * in.c * kKernel * kKernel + s.out_channels;
        const double* W = params_.data() + off;
        const std::size_t b_off =
            off + static_cast<std::size_t>(s.out_channels) * in.c * kKernel * kKernel;

        Tensor d_in(in.c, in.h, in.w);
        for (int oc = 0; oc < s.out_channels; ++oc)
            for (int oy = 0; oy < pre.h; ++oy)
                for (int ox = 0; ox < pre.w; ++ox) {
                    const double g = pre.at(oc, oy, ox) > 0.0 ? d_act.at(oc, oy, ox) : 0.0;
                    if (g == 0.0) continue;
                    grad[b_off + oc] += g;
                    for (int ic = 0; ic < in.c; ++ic) {
                        const std::size_t w_base =
                            off + (static_cast<std::size_t>(oc) * in.c + ic) * kKernel * kKernel;
                        for (int ky = 0; ky < kKernel; ++ky) {
                            const int iy = oy * s.stride + ky - kPad;
                            if (iy < 0 || iy >= in.h) continue;
                            for (int kx = 0; kx < kKernel; ++kx) {
                                const int ix = ox * s.stride + kx - kPad;
                                if (ix < 0 || ix >= in.w) continue;
                                grad[w_base + ky * kKernel + kx] += g * in.at(ic, iy, ix);
                                d_in.at(ic, iy, ix) += g * W[w_base - off + ky * kKernel + kx];
                            }
                        }
                    }
                }
        d_act = std::move(d_in);
    }
}

double pair_distance(const std::vector<double>& e1, const std::vector<double>& e2) {
    if (e1.size() != e2.size()) throw DimensionError("embedding length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < e1.size(); ++i) {
        const double d = e1[i] - e2[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

double contrastive_loss(const std::vector<DistanceLabel>& batch, double margin) {
    if (margin <= 0.0) throw ParameterError("margin must be positive");
    if (batch.empty()) throw ParameterError("contrastive loss needs a non-empty batch");
    double acc = 0.0;
    for (const auto& [s, y] : batch) {
        if (y != 0 && y != 1) throw ParameterError("pair label must be 0 or 1");
        acc += y == 1 ? s : std::max(margin - s, 0.0);
    }
    return acc / (2.0 * static_cast<double>(batch.size()));
}

}  // namespace paas

#include "tweetsense/neural.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>

#include "tweetsense/errors.hpp"
#include "tweetsense/sentiment.hpp"
#include "tweetsense/text_prep.hpp"
#include "tweetsense/util.hpp"

namespace tweetsense {

namespace {

constexpr double kProbFloor = 1e-12;

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

void softmax_inplace(std::array<double, kNumClasses>& z) {
    double zmax = std::max({z[0], z[1], z[2]});
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - zmax);
        sum += v;
    }
    for (double& v : z) v /= sum;
}

int argmax3(const std::array<double, kNumClasses>& p) {
    int best = 0;
    for (int c = 1; c < kNumClasses; ++c) {
        if (p[c] > p[best]) best = c;
    }
    return best;
}

void glorot_fill(Mat& m, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
    double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (double& v : m.data) v = rng.uniform(-limit, limit);
}

void check_labels(const std::vector<int>& ys) {
    for (int y : ys) {
        if (y < 0 || y >= kNumClasses) {
            throw DataError("label index out of range: " + std::to_string(y));
        }
    }
}

} // namespace

int label_index(Polarity p) {
    switch (p) {
    case Polarity::Negative: return 0;
    case Polarity::Neutral: return 1;
    case Polarity::Positive: return 2;
    }
    return 1;
}

Polarity label_from_index(int index) {
    switch (index) {
    case 0: return Polarity::Negative;
    case 1: return Polarity::Neutral;
    case 2: return Polarity::Positive;
    default: throw DataError("label index out of range: " + std::to_string(index));
    }
}

// ---------------------------------------------------------------------------
// Vocabulary
// ---------------------------------------------------------------------------

std::uint32_t Vocabulary::lookup(const std::string& token) const {
    auto it = token_to_id.find(token);
    return it == token_to_id.end() ? kUnkIndex : it->second;
}

Vocabulary build_vocab(const std::vector<std::string>& texts, std::uint32_t V) {
    if (V < 3) throw DataError("vocabulary size must be at least 3");
    std::map<std::string, std::uint64_t> freq;
    for (const std::string& text : texts) {
        for (const std::string& token : tokenize_classifier(text)) {
            ++freq[token];
        }
    }
    if (freq.empty()) throw DataError("no tokens to build a vocabulary from");

    std::vector<std::pair<std::string, std::uint64_t>> ranked(freq.begin(),
                                                              freq.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Vocabulary vocab;
    vocab.id_to_token = {"<pad>", "<unk>"};
    std::size_t keep = std::min<std::size_t>(ranked.size(), V - 2);
    for (std::size_t i = 0; i < keep; ++i) {
        vocab.id_to_token.push_back(ranked[i].first);
    }
    for (std::uint32_t id = 0; id < vocab.id_to_token.size(); ++id) {
        vocab.token_to_id[vocab.id_to_token[id]] = id;
    }
    return vocab;
}

Vec vectorize_bow(std::string_view text, const Vocabulary& vocab) {
    Vec x(vocab.size(), 0.0);
    for (const std::string& token : tokenize_classifier(text)) {
        x[vocab.lookup(token)] += 1.0;
    }
    return x;
}

SparseVec vectorize_bow_sparse(std::string_view text, const Vocabulary& vocab) {
    std::map<std::uint32_t, double> counts;
    for (const std::string& token : tokenize_classifier(text)) {
        counts[vocab.lookup(token)] += 1.0;
    }
    return SparseVec(counts.begin(), counts.end());
}

std::vector<std::uint32_t> encode_sequence(std::string_view text,
                                           const Vocabulary& vocab,
                                           std::size_t maxlen) {
    std::vector<std::uint32_t> ids;
    for (const std::string& token : tokenize_classifier(text)) {
        ids.push_back(vocab.lookup(token));
    }
    std::vector<std::uint32_t> out(maxlen, kPadIndex);
    if (ids.size() >= maxlen) {
        // keep the tail
        std::copy(ids.end() - static_cast<std::ptrdiff_t>(maxlen), ids.end(),
                  out.begin());
    } else {
        std::copy(ids.begin(), ids.end(), out.end() - static_cast<std::ptrdiff_t>(ids.size()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// MLP
// ---------------------------------------------------------------------------

MlpModel MlpModel::init(std::size_t V, std::size_t H, Rng& rng) {
    if (V < 2 || H < 1) throw DataError("mlp dimensions too small");
    MlpModel m;
    m.V = V;
    m.H = H;
    m.W1 = Mat(V, H);
    m.b1 = Vec(H, 0.0);
    m.W2 = Mat(H, kNumClasses);
    m.b2 = Vec(kNumClasses, 0.0);
    glorot_fill(m.W1, V, H, rng);
    glorot_fill(m.W2, H, kNumClasses, rng);
    return m;
}

MlpGrads MlpGrads::zeros_like(const MlpModel& m) {
    MlpGrads g;
    g.W1 = Mat(m.V, m.H);
    g.b1 = Vec(m.H, 0.0);
    g.W2 = Mat(m.H, kNumClasses);
    g.b2 = Vec(kNumClasses, 0.0);
    return g;
}

namespace {

struct MlpCache {
    Vec h; // post-relu hidden
    std::array<double, kNumClasses> probs{};
};

MlpCache mlp_forward_cached(const SparseVec& x, const MlpModel& m) {
    MlpCache cache;
    cache.h = m.b1;
    for (const auto& [idx, value] : x) {
        if (idx >= m.V) throw DataError("bow index out of range");
        for (std::size_t j = 0; j < m.H; ++j) {
            cache.h[j] += value * m.W1(idx, j);
        }
    }
    for (double& v : cache.h) v = v > 0.0 ? v : 0.0;

    std::array<double, kNumClasses> z{};
    for (int c = 0; c < kNumClasses; ++c) z[static_cast<std::size_t>(c)] = m.b2[static_cast<std::size_t>(c)];
    for (std::size_t j = 0; j < m.H; ++j) {
        double hj = cache.h[j];
        if (hj == 0.0) continue;
        for (int c = 0; c < kNumClasses; ++c) {
            z[static_cast<std::size_t>(c)] += hj * m.W2(j, static_cast<std::size_t>(c));
        }
    }
    softmax_inplace(z);
    cache.probs = z;
    return cache;
}

} // namespace

std::array<double, kNumClasses> mlp_forward_sparse(const SparseVec& x,
                                                   const MlpModel& m) {
    return mlp_forward_cached(x, m).probs;
}

std::array<double, kNumClasses> mlp_forward(const Vec& x, const MlpModel& m) {
    if (x.size() != m.V) throw DataError("bow vector has wrong size");
    SparseVec sparse;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0.0) sparse.emplace_back(static_cast<std::uint32_t>(i), x[i]);
    }
    return mlp_forward_sparse(sparse, m);
}

double mlp_loss_and_grads(const std::vector<SparseVec>& xs,
                          const std::vector<int>& ys, const MlpModel& m,
                          MlpGrads* grads) {
    if (xs.size() != ys.size()) throw DataError("batch size mismatch");
    if (xs.empty()) throw DataError("empty batch");
    check_labels(ys);

    const double inv_n = 1.0 / static_cast<double>(xs.size());
    double loss = 0.0;
    for (std::size_t e = 0; e < xs.size(); ++e) {
        MlpCache cache = mlp_forward_cached(xs[e], m);
        double py = std::max(cache.probs[static_cast<std::size_t>(ys[e])], kProbFloor);
        loss -= std::log(py) * inv_n;
        if (!grads) continue;

        std::array<double, kNumClasses> dz = cache.probs;
        dz[static_cast<std::size_t>(ys[e])] -= 1.0;
        for (double& v : dz) v *= inv_n;

        Vec dh(m.H, 0.0);
        for (std::size_t j = 0; j < m.H; ++j) {
            for (int c = 0; c < kNumClasses; ++c) {
                auto cs = static_cast<std::size_t>(c);
                grads->W2(j, cs) += cache.h[j] * dz[cs];
                dh[j] += m.W2(j, cs) * dz[cs];
            }
        }
        for (int c = 0; c < kNumClasses; ++c) {
            grads->b2[static_cast<std::size_t>(c)] += dz[static_cast<std::size_t>(c)];
        }
        for (std::size_t j = 0; j < m.H; ++j) {
            if (cache.h[j] <= 0.0) dh[j] = 0.0;
            grads->b1[j] += dh[j];
        }
        for (const auto& [idx, value] : xs[e]) {
            for (std::size_t j = 0; j < m.H; ++j) {
                grads->W1(idx, j) += value * dh[j];
            }
        }
    }
    return loss;
}

// ---------------------------------------------------------------------------
// LSTM stack
// ---------------------------------------------------------------------------

LstmModel LstmModel::init(std::size_t V, std::size_t D, std::size_t U,
                          std::size_t K, std::size_t F, std::size_t maxlen,
                          double dropout, Rng& rng) {
    if (V < 2 || D < 1 || U < 1 || K < 1 || F < 1 || maxlen < 1) {
        throw DataError("lstm dimensions too small");
    }
    if (maxlen < K) throw DataError("maxlen must be at least the kernel width");
    if (dropout < 0.0 || dropout >= 1.0) {
        throw DataError("dropout must be in [0, 1)");
    }
    LstmModel m;
    m.V = V;
    m.D = D;
    m.U = U;
    m.K = K;
    m.F = F;
    m.maxlen = maxlen;
    m.dropout = dropout;

    m.E = Mat(V, D);
    for (double& v : m.E.data) v = rng.uniform(-0.05, 0.05);
    for (std::size_t d = 0; d < D; ++d) m.E(kPadIndex, d) = 0.0;

    for (Mat* w : {&m.Wi, &m.Wf, &m.Wg, &m.Wo}) {
        *w = Mat(D, U);
        glorot_fill(*w, D, U, rng);
    }
    for (Mat* u : {&m.Ui, &m.Uf, &m.Ug, &m.Uo}) {
        *u = Mat(U, U);
        glorot_fill(*u, U, U, rng);
    }
    m.bi = Vec(U, 0.0);
    m.bf = Vec(U, 1.0); // forget gate starts open
    m.bg = Vec(U, 0.0);
    m.bo = Vec(U, 0.0);

    m.Cw = Mat(F, K * U);
    glorot_fill(m.Cw, K * U, F, rng);
    m.cb = Vec(F, 0.0);
    m.Wd = Mat(F, kNumClasses);
    glorot_fill(m.Wd, F, kNumClasses, rng);
    m.bd = Vec(kNumClasses, 0.0);
    return m;
}

LstmGrads LstmGrads::zeros_like(const LstmModel& m) {
    LstmGrads g;
    g.E = Mat(m.V, m.D);
    for (Mat* w : {&g.Wi, &g.Wf, &g.Wg, &g.Wo}) *w = Mat(m.D, m.U);
    for (Mat* u : {&g.Ui, &g.Uf, &g.Ug, &g.Uo}) *u = Mat(m.U, m.U);
    g.bi = Vec(m.U, 0.0);
    g.bf = Vec(m.U, 0.0);
    g.bg = Vec(m.U, 0.0);
    g.bo = Vec(m.U, 0.0);
    g.Cw = Mat(m.F, m.K * m.U);
    g.cb = Vec(m.F, 0.0);
    g.Wd = Mat(m.F, kNumClasses);
    g.bd = Vec(kNumClasses, 0.0);
    return g;
}

namespace {

void check_sequence(const std::vector<std::uint32_t>& seq, const LstmModel& m) {
    if (seq.size() != m.maxlen) {
        throw DataError("sequence length " + std::to_string(seq.size())
                        + " does not match maxlen " + std::to_string(m.maxlen));
    }
    for (std::uint32_t id : seq) {
        if (id >= m.V) throw DataError("token id out of range");
    }
}

// Everything the backward pass needs from one example.
struct LstmCache {
    std::vector<Vec> x;      // T x D embeddings
    std::vector<Vec> i, f, g, o;
    std::vector<Vec> c, tc;  // cell state and tanh(cell)
    std::vector<Vec> h;      // raw lstm outputs
    std::vector<Vec> hs;     // post-dropout outputs
    std::vector<Vec> conv;   // W x F pre-pool values
    std::vector<std::size_t> pool_at; // F winning window indices
    Vec pooled;              // F
    std::array<double, kNumClasses> probs{};
};

// One LSTM step; gate vectors are written into the provided slots.
void lstm_step(const LstmModel& m, const Vec& x, const Vec& h_prev,
               const Vec& c_prev, Vec& i, Vec& f, Vec& g, Vec& o, Vec& c,
               Vec& tc, Vec& h) {
    const std::size_t U = m.U;
    const std::size_t D = m.D;
    Vec ai = m.bi, af = m.bf, ag = m.bg, ao = m.bo;
    for (std::size_t d = 0; d < D; ++d) {
        double xd = x[d];
        if (xd == 0.0) continue;
        for (std::size_t u = 0; u < U; ++u) {
            ai[u] += xd * m.Wi(d, u);
            af[u] += xd * m.Wf(d, u);
            ag[u] += xd * m.Wg(d, u);
            ao[u] += xd * m.Wo(d, u);
        }
    }
    for (std::size_t up = 0; up < U; ++up) {
        double hp = h_prev[up];
        if (hp == 0.0) continue;
        for (std::size_t u = 0; u < U; ++u) {
            ai[u] += hp * m.Ui(up, u);
            af[u] += hp * m.Uf(up, u);
            ag[u] += hp * m.Ug(up, u);
            ao[u] += hp * m.Uo(up, u);
        }
    }
    i.resize(U);
    f.resize(U);
    g.resize(U);
    o.resize(U);
    c.resize(U);
    tc.resize(U);
    h.resize(U);
    for (std::size_t u = 0; u < U; ++u) {
        i[u] = sigmoid(ai[u]);
        f[u] = sigmoid(af[u]);
        g[u] = std::tanh(ag[u]);
        o[u] = sigmoid(ao[u]);
        c[u] = f[u] * c_prev[u] + i[u] * g[u];
        tc[u] = std::tanh(c[u]);
        h[u] = o[u] * tc[u];
    }
}

LstmCache lstm_forward_cached(const std::vector<std::uint32_t>& seq,
                              const LstmModel& m, const Vec* mask) {
    check_sequence(seq, m);
    const std::size_t T = m.maxlen;
    const std::size_t U = m.U;
    const std::size_t F = m.F;
    const std::size_t K = m.K;
    const std::size_t W = T - K + 1;

    LstmCache cache;
    cache.x.resize(T);
    cache.i.resize(T);
    cache.f.resize(T);
    cache.g.resize(T);
    cache.o.resize(T);
    cache.c.resize(T);
    cache.tc.resize(T);
    cache.h.resize(T);
    cache.hs.resize(T);

    Vec h_prev(U, 0.0), c_prev(U, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
        cache.x[t].resize(m.D);
        for (std::size_t d = 0; d < m.D; ++d) cache.x[t][d] = m.E(seq[t], d);
        lstm_step(m, cache.x[t], h_prev, c_prev, cache.i[t], cache.f[t],
                  cache.g[t], cache.o[t], cache.c[t], cache.tc[t], cache.h[t]);
        h_prev = cache.h[t];
        c_prev = cache.c[t];

        cache.hs[t] = cache.h[t];
        if (mask) {
            for (std::size_t u = 0; u < U; ++u) {
                cache.hs[t][u] *= (*mask)[t * U + u];
            }
        }
    }

    cache.conv.assign(W, Vec(F, 0.0));
    for (std::size_t w = 0; w < W; ++w) {
        for (std::size_t fi = 0; fi < F; ++fi) {
            double acc = m.cb[fi];
            for (std::size_t k = 0; k < K; ++k) {
                const Vec& hv = cache.hs[w + k];
                for (std::size_t u = 0; u < U; ++u) {
                    acc += m.Cw(fi, k * U + u) * hv[u];
                }
            }
            cache.conv[w][fi] = acc;
        }
    }

    cache.pool_at.assign(F, 0);
    cache.pooled.assign(F, 0.0);
    for (std::size_t fi = 0; fi < F; ++fi) {
        double best = cache.conv[0][fi];
        std::size_t at = 0;
        for (std::size_t w = 1; w < W; ++w) {
            if (cache.conv[w][fi] > best) {
                best = cache.conv[w][fi];
                at = w;
            }
        }
        cache.pooled[fi] = best;
        cache.pool_at[fi] = at;
    }

    std::array<double, kNumClasses> z{};
    for (int cc = 0; cc < kNumClasses; ++cc) {
        auto cs = static_cast<std::size_t>(cc);
        z[cs] = m.bd[cs];
        for (std::size_t fi = 0; fi < F; ++fi) {
            z[cs] += cache.pooled[fi] * m.Wd(fi, cs);
        }
    }
    softmax_inplace(z);
    cache.probs = z;
    return cache;
}

Vec make_dropout_mask(const LstmModel& m, Rng& rng) {
    Vec mask(m.maxlen * m.U, 1.0);
    if (m.dropout <= 0.0) return mask;
    const double keep_scale = 1.0 / (1.0 - m.dropout);
    for (double& v : mask) {
        v = rng.uniform() < m.dropout ? 0.0 : keep_scale;
    }
    return mask;
}

} // namespace

std::array<double, kNumClasses> lstm_forward(const std::vector<std::uint32_t>& seq,
                                             const LstmModel& m,
                                             bool dropout_active,
                                             Rng* dropout_rng) {
    if (!dropout_active) return lstm_forward_cached(seq, m, nullptr).probs;
    if (!dropout_rng) throw DataError("dropout_active requires a dropout rng");
    Vec mask = make_dropout_mask(m, *dropout_rng);
    return lstm_forward_cached(seq, m, &mask).probs;
}

LstmTrace lstm_states(const std::vector<std::uint32_t>& seq, const LstmModel& m,
                      const Vec& h0, const Vec& c0) {
    check_sequence(seq, m);
    if (h0.size() != m.U || c0.size() != m.U) {
        throw DataError("initial state size mismatch");
    }
    LstmTrace trace;
    Vec h_prev = h0, c_prev = c0;
    Vec i, f, g, o, c, tc, h;
    Vec x(m.D);
    for (std::size_t t = 0; t < seq.size(); ++t) {
        for (std::size_t d = 0; d < m.D; ++d) x[d] = m.E(seq[t], d);
        lstm_step(m, x, h_prev, c_prev, i, f, g, o, c, tc, h);
        trace.h.push_back(h);
        trace.c.push_back(c);
        h_prev = h;
        c_prev = c;
    }
    return trace;
}

double lstm_loss_and_grads(const std::vector<std::vector<std::uint32_t>>& seqs,
                           const std::vector<int>& ys, const LstmModel& m,
                           LstmGrads* grads,
                           const std::vector<Vec>* dropout_masks) {
    if (seqs.size() != ys.size()) throw DataError("batch size mismatch");
    if (seqs.empty()) throw DataError("empty batch");
    check_labels(ys);
    if (dropout_masks && dropout_masks->size() != seqs.size()) {
        throw DataError("dropout mask count mismatch");
    }

    const std::size_t T = m.maxlen;
    const std::size_t U = m.U;
    const std::size_t F = m.F;
    const std::size_t K = m.K;
    const double inv_n = 1.0 / static_cast<double>(seqs.size());
    double loss = 0.0;

    for (std::size_t e = 0; e < seqs.size(); ++e) {
        const Vec* mask = nullptr;
        if (dropout_masks) {
            if ((*dropout_masks)[e].size() != T * U) {
                throw DataError("dropout mask has wrong size");
            }
            mask = &(*dropout_masks)[e];
        }
        LstmCache cache = lstm_forward_cached(seqs[e], m, mask);
        double py = std::max(cache.probs[static_cast<std::size_t>(ys[e])], kProbFloor);
        loss -= std::log(py) * inv_n;
        if (!grads) continue;

        // dense head
        std::array<double, kNumClasses> dz = cache.probs;
        dz[static_cast<std::size_t>(ys[e])] -= 1.0;
        for (double& v : dz) v *= inv_n;

        Vec dpool(F, 0.0);
        for (int cc = 0; cc < kNumClasses; ++cc) {
            auto cs = static_cast<std::size_t>(cc);
            grads->bd[cs] += dz[cs];
            for (std::size_t fi = 0; fi < F; ++fi) {
                grads->Wd(fi, cs) += cache.pooled[fi] * dz[cs];
                dpool[fi] += m.Wd(fi, cs) * dz[cs];
            }
        }

        // max-pool routes each filter's gradient into its winning window
        std::vector<Vec> dhs(T, Vec(U, 0.0));
        for (std::size_t fi = 0; fi < F; ++fi) {
            double dy = dpool[fi];
            if (dy == 0.0) continue;
            std::size_t w = cache.pool_at[fi];
            grads->cb[fi] += dy;
            for (std::size_t k = 0; k < K; ++k) {
                const Vec& hv = cache.hs[w + k];
                for (std::size_t u = 0; u < U; ++u) {
                    grads->Cw(fi, k * U + u) += dy * hv[u];
                    dhs[w + k][u] += dy * m.Cw(fi, k * U + u);
                }
            }
        }

        // chain through the dropout scaling
        if (mask) {
            for (std::size_t t = 0; t < T; ++t) {
                for (std::size_t u = 0; u < U; ++u) {
                    dhs[t][u] *= (*mask)[t * U + u];
                }
            }
        }

        // backpropagation through time
        Vec dh_next(U, 0.0), dc_next(U, 0.0);
        Vec da_i(U), da_f(U), da_g(U), da_o(U);
        for (std::size_t ti = T; ti-- > 0;) {
            const Vec& i_t = cache.i[ti];
            const Vec& f_t = cache.f[ti];
            const Vec& g_t = cache.g[ti];
            const Vec& o_t = cache.o[ti];
            const Vec& tc_t = cache.tc[ti];
            const Vec* c_prev = ti > 0 ? &cache.c[ti - 1] : nullptr;
            const Vec* h_prev = ti > 0 ? &cache.h[ti - 1] : nullptr;

            for (std::size_t u = 0; u < U; ++u) {
                double dh = dhs[ti][u] + dh_next[u];
                double dc = dc_next[u] + dh * o_t[u] * (1.0 - tc_t[u] * tc_t[u]);
                double dot = dh * tc_t[u];
                double cp = c_prev ? (*c_prev)[u] : 0.0;

                da_i[u] = dc * g_t[u] * i_t[u] * (1.0 - i_t[u]);
                da_f[u] = dc * cp * f_t[u] * (1.0 - f_t[u]);
                da_g[u] = dc * i_t[u] * (1.0 - g_t[u] * g_t[u]);
                da_o[u] = dot * o_t[u] * (1.0 - o_t[u]);
                dc_next[u] = dc * f_t[u];

                grads->bi[u] += da_i[u];
                grads->bf[u] += da_f[u];
                grads->bg[u] += da_g[u];
                grads->bo[u] += da_o[u];
            }

            const Vec& x_t = cache.x[ti];
            std::uint32_t token = seqs[e][ti];
            Vec dx(m.D, 0.0);
            for (std::size_t d = 0; d < m.D; ++d) {
                double xd = x_t[d];
                double acc = 0.0;
                for (std::size_t u = 0; u < U; ++u) {
                    grads->Wi(d, u) += xd * da_i[u];
                    grads->Wf(d, u) += xd * da_f[u];
                    grads->Wg(d, u) += xd * da_g[u];
                    grads->Wo(d, u) += xd * da_o[u];
                    acc += m.Wi(d, u) * da_i[u] + m.Wf(d, u) * da_f[u]
                           + m.Wg(d, u) * da_g[u] + m.Wo(d, u) * da_o[u];
                }
                dx[d] = acc;
            }
            if (token != kPadIndex) {
                for (std::size_t d = 0; d < m.D; ++d) {
                    grads->E(token, d) += dx[d];
                }
            }

            std::fill(dh_next.begin(), dh_next.end(), 0.0);
            if (h_prev) {
                for (std::size_t up = 0; up < U; ++up) {
                    double hp = (*h_prev)[up];
                    double acc = 0.0;
                    for (std::size_t u = 0; u < U; ++u) {
                        grads->Ui(up, u) += hp * da_i[u];
                        grads->Uf(up, u) += hp * da_f[u];
                        grads->Ug(up, u) += hp * da_g[u];
                        grads->Uo(up, u) += hp * da_o[u];
                        acc += m.Ui(up, u) * da_i[u] + m.Uf(up, u) * da_f[u]
                               + m.Ug(up, u) * da_g[u] + m.Uo(up, u) * da_o[u];
                    }
                    dh_next[up] = acc;
                }
            }
        }
    }
    return loss;
}

// ---------------------------------------------------------------------------
// Named parameters and Adam
// ---------------------------------------------------------------------------

namespace {

NamedParam named(const char* name, Mat& m) {
    return NamedParam{name, {m.rows, m.cols}, m.data.data(), m.data.size()};
}

NamedParam named(const char* name, Vec& v) {
    return NamedParam{name, {v.size()}, v.data(), v.size()};
}

} // namespace

std::vector<NamedParam> named_params(MlpModel& m) {
    return {named("W1", m.W1), named("b1", m.b1), named("W2", m.W2),
            named("b2", m.b2)};
}

std::vector<NamedParam> named_params(MlpGrads& g) {
    return {named("W1", g.W1), named("b1", g.b1), named("W2", g.W2),
            named("b2", g.b2)};
}

std::vector<NamedParam> named_params(LstmModel& m) {
    return {named("E", m.E),   named("Wi", m.Wi), named("Wf", m.Wf),
            named("Wg", m.Wg), named("Wo", m.Wo), named("Ui", m.Ui),
            named("Uf", m.Uf), named("Ug", m.Ug), named("Uo", m.Uo),
            named("bi", m.bi), named("bf", m.bf), named("bg", m.bg),
            named("bo", m.bo), named("Cw", m.Cw), named("cb", m.cb),
            named("Wd", m.Wd), named("bd", m.bd)};
}

std::vector<NamedParam> named_params(LstmGrads& g) {
    return {named("E", g.E),   named("Wi", g.Wi), named("Wf", g.Wf),
            named("Wg", g.Wg), named("Wo", g.Wo), named("Ui", g.Ui),
            named("Uf", g.Uf), named("Ug", g.Ug), named("Uo", g.Uo),
            named("bi", g.bi), named("bf", g.bf), named("bg", g.bg),
            named("bo", g.bo), named("Cw", g.Cw), named("cb", g.cb),
            named("Wd", g.Wd), named("bd", g.bd)};
}

namespace {

void adam_update_span(double* params, const double* grads, std::size_t n,
                      AdamState& state, std::size_t offset) {
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    for (std::size_t k = 0; k < n; ++k) {
        double gk = grads[k];
        if (!std::isfinite(gk)) {
            throw NumericError("non-finite gradient during optimization");
        }
        double& mk = state.m[offset + k];
        double& vk = state.v[offset + k];
        mk = state.beta1 * mk + (1.0 - state.beta1) * gk;
        vk = state.beta2 * vk + (1.0 - state.beta2) * gk * gk;
        double mhat = mk / bc1;
        double vhat = vk / bc2;
        params[k] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
    }
}

} // namespace

void adam_step(double* params, const double* grads, std::size_t n,
               AdamState& state) {
    if (state.m.empty()) {
        state.m.assign(n, 0.0);
        state.v.assign(n, 0.0);
    }
    if (state.m.size() != n || state.v.size() != n) {
        throw DataError("adam state size mismatch");
    }
    ++state.t;
    adam_update_span(params, grads, n, state, 0);
}

void adam_step(const std::vector<NamedParam>& params,
               const std::vector<NamedParam>& grads, AdamState& state) {
    if (params.size() != grads.size()) throw DataError("param/grad count mismatch");
    std::size_t total = 0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i].name != grads[i].name || params[i].size != grads[i].size) {
            throw DataError("param/grad layout mismatch at " + params[i].name);
        }
        total += params[i].size;
    }
    if (state.m.empty()) {
        state.m.assign(total, 0.0);
        state.v.assign(total, 0.0);
    }
    if (state.m.size() != total || state.v.size() != total) {
        throw DataError("adam state size mismatch");
    }
    ++state.t;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        adam_update_span(params[i].data, grads[i].data, params[i].size, state,
                         offset);
        offset += params[i].size;
    }
}

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

SplitIndices split_dataset(std::size_t n, double train_frac, std::uint64_t seed) {
    if (train_frac < 0.0 || train_frac > 1.0) {
        throw DataError("train fraction must be in [0, 1]");
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);
    std::size_t n_train = static_cast<std::size_t>(
        train_frac * static_cast<double>(n) + 0.5);
    if (n_train > n) n_train = n;
    SplitIndices split;
    split.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.val.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    return split;
}

namespace {

void check_dataset(const std::vector<std::string>& texts,
                   const std::vector<int>& labels) {
    if (texts.size() != labels.size()) {
        throw DataError("texts and labels differ in length");
    }
    if (texts.empty()) throw DataError("empty training set");
    check_labels(labels);
}

void check_train_classes(const std::vector<int>& labels,
                         const std::vector<std::size_t>& train) {
    std::array<long long, kNumClasses> counts{};
    for (std::size_t idx : train) {
        ++counts[static_cast<std::size_t>(labels[idx])];
    }
    for (int c = 0; c < kNumClasses; ++c) {
        if (counts[static_cast<std::size_t>(c)] == 0) {
            throw DataError("class " + std::to_string(c)
                            + " is missing from the training split");
        }
    }
}

template <typename Forward>
double accuracy_of(const std::vector<int>& ys, std::size_t n, Forward&& fwd) {
    if (n == 0) return 0.0;
    long long correct = 0;
    for (std::size_t e = 0; e < n; ++e) {
        if (argmax3(fwd(e)) == ys[e]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(n);
}

} // namespace

MlpTrainResult train_mlp(const std::vector<std::string>& texts,
                         const std::vector<int>& labels, const MlpHyper& hyper) {
    check_dataset(texts, labels);
    if (hyper.batch < 1) throw DataError("batch size must be positive");
    if (hyper.epochs < 1) throw DataError("epoch count must be positive");

    SplitIndices split = split_dataset(texts.size(), hyper.train_frac, hyper.seed);
    if (split.train.empty()) throw DataError("training split is empty");
    check_train_classes(labels, split.train);

    std::vector<std::string> train_texts;
    train_texts.reserve(split.train.size());
    for (std::size_t idx : split.train) train_texts.push_back(texts[idx]);

    MlpTrainResult result;
    result.vocab = build_vocab(train_texts, hyper.V);

    std::vector<SparseVec> train_xs;
    std::vector<int> train_ys;
    train_xs.reserve(split.train.size());
    for (std::size_t idx : split.train) {
        train_xs.push_back(vectorize_bow_sparse(texts[idx], result.vocab));
        train_ys.push_back(labels[idx]);
    }
    std::vector<SparseVec> val_xs;
    std::vector<int> val_ys;
    for (std::size_t idx : split.val) {
        val_xs.push_back(vectorize_bow_sparse(texts[idx], result.vocab));
        val_ys.push_back(labels[idx]);
    }

    Rng rng(hyper.seed);
    result.model = MlpModel::init(result.vocab.size(), hyper.H, rng);
    AdamState adam;
    adam.lr = hyper.lr;
    MlpGrads grads = MlpGrads::zeros_like(result.model);
    auto params = named_params(result.model);
    auto grad_params = named_params(grads);

    const std::size_t n_train = train_xs.size();
    std::vector<std::size_t> order(n_train);
    for (std::size_t i = 0; i < n_train; ++i) order[i] = i;

    for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < n_train; start += hyper.batch) {
            std::size_t stop = std::min(n_train, start + hyper.batch);
            std::vector<SparseVec> bx;
            std::vector<int> by;
            bx.reserve(stop - start);
            for (std::size_t k = start; k < stop; ++k) {
                bx.push_back(train_xs[order[k]]);
                by.push_back(train_ys[order[k]]);
            }
            for (auto& p : grad_params) std::fill(p.data, p.data + p.size, 0.0);
            double batch_loss = mlp_loss_and_grads(bx, by, result.model, &grads);
            if (!std::isfinite(batch_loss)) {
                throw NumericError("non-finite training loss");
            }
            epoch_loss += batch_loss * static_cast<double>(bx.size());
            adam_step(params, grad_params, adam);
        }

        EpochStats stats;
        stats.train_loss = epoch_loss / static_cast<double>(n_train);
        stats.train_acc = accuracy_of(train_ys, n_train, [&](std::size_t e) {
            return mlp_forward_sparse(train_xs[e], result.model);
        });
        stats.val_acc = accuracy_of(val_ys, val_xs.size(), [&](std::size_t e) {
            return mlp_forward_sparse(val_xs[e], result.model);
        });
        result.history.push_back(stats);
    }
    return result;
}

LstmTrainResult train_lstm(const std::vector<std::string>& texts,
                           const std::vector<int>& labels,
                           const LstmHyper& hyper) {
    check_dataset(texts, labels);
    if (hyper.batch < 1) throw DataError("batch size must be positive");
    if (hyper.epochs < 1) throw DataError("epoch count must be positive");

    SplitIndices split = split_dataset(texts.size(), hyper.train_frac, hyper.seed);
    if (split.train.empty()) throw DataError("training split is empty");
    check_train_classes(labels, split.train);

    std::vector<std::string> train_texts;
    train_texts.reserve(split.train.size());
    for (std::size_t idx : split.train) train_texts.push_back(texts[idx]);

    LstmTrainResult result;
    result.vocab = build_vocab(train_texts, hyper.V);

    std::vector<std::vector<std::uint32_t>> train_xs;
    std::vector<int> train_ys;
    for (std::size_t idx : split.train) {
        train_xs.push_back(encode_sequence(texts[idx], result.vocab, hyper.maxlen));
        train_ys.push_back(labels[idx]);
    }
    std::vector<std::vector<std::uint32_t>> val_xs;
    std::vector<int> val_ys;
    for (std::size_t idx : split.val) {
        val_xs.push_back(encode_sequence(texts[idx], result.vocab, hyper.maxlen));
        val_ys.push_back(labels[idx]);
    }

    Rng rng(hyper.seed);
    result.model = LstmModel::init(result.vocab.size(), hyper.D, hyper.U, hyper.K,
                                   hyper.F, hyper.maxlen, hyper.dropout, rng);
    AdamState adam;
    adam.lr = hyper.lr;
    LstmGrads grads = LstmGrads::zeros_like(result.model);
    auto params = named_params(result.model);
    auto grad_params = named_params(grads);

    const std::size_t n_train = train_xs.size();
    std::vector<std::size_t> order(n_train);
    for (std::size_t i = 0; i < n_train; ++i) order[i] = i;

    for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < n_train; start += hyper.batch) {
            std::size_t stop = std::min(n_train, start + hyper.batch);
            std::vector<std::vector<std::uint32_t>> bx;
            std::vector<int> by;
            for (std::size_t k = start; k < stop; ++k) {
                bx.push_back(train_xs[order[k]]);
                by.push_back(train_ys[order[k]]);
            }
            std::vector<Vec> masks;
            std::vector<Vec>* mask_ptr = nullptr;
            if (hyper.dropout > 0.0) {
                masks.reserve(bx.size());
                for (std::size_t k = 0; k < bx.size(); ++k) {
                    masks.push_back(make_dropout_mask(result.model, rng));
                }
                mask_ptr = &masks;
            }
            for (auto& p : grad_params) std::fill(p.data, p.data + p.size, 0.0);
            double batch_loss =
                lstm_loss_and_grads(bx, by, result.model, &grads, mask_ptr);
            if (!std::isfinite(batch_loss)) {
                throw NumericError("non-finite training loss");
            }
            epoch_loss += batch_loss * static_cast<double>(bx.size());
            adam_step(params, grad_params, adam);
        }

        EpochStats stats;
        stats.train_loss = epoch_loss / static_cast<double>(n_train);
        stats.train_acc = accuracy_of(train_ys, n_train, [&](std::size_t e) {
            return lstm_forward(train_xs[e], result.model);
        });
        stats.val_acc = accuracy_of(val_ys, val_xs.size(), [&](std::size_t e) {
            return lstm_forward(val_xs[e], result.model);
        });
        result.history.push_back(stats);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

template <typename Forward>
EvalResult evaluate_with(const std::vector<int>& labels, std::size_t n,
                         Forward&& fwd) {
    EvalResult result;
    if (n == 0) return result;
    long long correct = 0;
    for (std::size_t e = 0; e < n; ++e) {
        int pred = argmax3(fwd(e));
        int truth = labels[e];
        ++result.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(pred)];
        if (pred == truth) ++correct;
    }
    result.accuracy = static_cast<double>(correct) / static_cast<double>(n);
    return result;
}

} // namespace

EvalResult evaluate_mlp(const Vocabulary& vocab, const MlpModel& model,
                        const std::vector<std::string>& texts,
                        const std::vector<int>& labels) {
    if (texts.size() != labels.size()) {
        throw DataError("texts and labels differ in length");
    }
    if (texts.empty()) throw DataError("nothing to evaluate");
    check_labels(labels);
    return evaluate_with(labels, texts.size(), [&](std::size_t e) {
        return mlp_forward_sparse(vectorize_bow_sparse(texts[e], vocab), model);
    });
}

EvalResult evaluate_lstm(const Vocabulary& vocab, const LstmModel& model,
                         const std::vector<std::string>& texts,
                         const std::vector<int>& labels) {
    if (texts.size() != labels.size()) {
        throw DataError("texts and labels differ in length");
    }
    if (texts.empty()) throw DataError("nothing to evaluate");
    check_labels(labels);
    return evaluate_with(labels, texts.size(), [&](std::size_t e) {
        return lstm_forward(encode_sequence(texts[e], vocab, model.maxlen), model);
    });
}

// ---------------------------------------------------------------------------
// Checkpoints
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'T', 'W', 'S', 'N', 'M', 'D', 'L', '1'};

void put_u8(std::string& out, std::uint8_t v) {
    out.push_back(static_cast<char>(v));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

void put_f64(std::string& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

void put_string(std::string& out, std::string_view s) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.append(s);
}

struct ByteReader {
    std::string_view buf;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > buf.size()) throw DataError("truncated checkpoint");
    }
    std::uint8_t get_u8() {
        need(1);
        return static_cast<std::uint8_t>(buf[pos++]);
    }
    std::uint32_t get_u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[pos++]))
                 << (8 * i);
        }
        return v;
    }
    std::uint64_t get_u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(buf[pos++]))
                 << (8 * i);
        }
        return v;
    }
    double get_f64() { return std::bit_cast<double>(get_u64()); }
    std::string get_string() {
        std::uint32_t n = get_u32();
        need(n);
        std::string s(buf.substr(pos, n));
        pos += n;
        return s;
    }
    bool done() const { return pos == buf.size(); }
};

void put_vocab(std::string& out, const Vocabulary& vocab) {
    put_u64(out, vocab.id_to_token.size());
    for (const std::string& token : vocab.id_to_token) put_string(out, token);
}

Vocabulary get_vocab(ByteReader& reader) {
    std::uint64_t n = reader.get_u64();
    Vocabulary vocab;
    vocab.id_to_token.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        vocab.id_to_token.push_back(reader.get_string());
    }
    if (vocab.id_to_token.size() < 2 || vocab.id_to_token[0] != "<pad>"
        || vocab.id_to_token[1] != "<unk>") {
        throw DataError("checkpoint vocabulary lacks <pad>/<unk> sentinels");
    }
    for (std::uint32_t id = 0; id < vocab.id_to_token.size(); ++id) {
        if (!vocab.token_to_id.emplace(vocab.id_to_token[id], id).second) {
            throw DataError("duplicate token in checkpoint vocabulary");
        }
    }
    return vocab;
}

void put_tensors(std::string& out, const std::vector<NamedParam>& params) {
    put_u32(out, static_cast<std::uint32_t>(params.size()));
    for (const NamedParam& p : params) {
        put_string(out, p.name);
        put_u32(out, static_cast<std::uint32_t>(p.dims.size()));
        for (std::size_t d : p.dims) put_u64(out, d);
        for (std::size_t k = 0; k < p.size; ++k) put_f64(out, p.data[k]);
    }
}

void get_tensors(ByteReader& reader, const std::vector<NamedParam>& params) {
    std::uint32_t count = reader.get_u32();
    if (count != params.size()) {
        throw DataError("checkpoint tensor count mismatch");
    }
    for (const NamedParam& p : params) {
        std::string name = reader.get_string();
        if (name != p.name) {
            throw DataError("unexpected checkpoint tensor '" + name
                            + "' (wanted '" + p.name + "')");
        }
        std::uint32_t ndims = reader.get_u32();
        if (ndims != p.dims.size()) {
            throw DataError("tensor '" + name + "' has wrong rank");
        }
        for (std::size_t d : p.dims) {
            if (reader.get_u64() != d) {
                throw DataError("tensor '" + name + "' has wrong shape");
            }
        }
        for (std::size_t k = 0; k < p.size; ++k) p.data[k] = reader.get_f64();
    }
}

void write_blob(const std::string& path, const std::string& blob) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write checkpoint: " + path);
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!out) throw DataError("failed writing checkpoint: " + path);
}

} // namespace

void save_checkpoint(const std::string& path, const Vocabulary& vocab,
                     const MlpModel& model) {
    if (vocab.size() != model.V) {
        throw DataError("vocabulary size does not match model input width");
    }
    std::string blob;
    blob.append(kMagic, sizeof(kMagic));
    put_u8(blob, 0);
    put_u64(blob, model.V);
    put_u64(blob, model.H);
    put_vocab(blob, vocab);
    put_tensors(blob, named_params(const_cast<MlpModel&>(model)));
    write_blob(path, blob);
}

void save_checkpoint(const std::string& path, const Vocabulary& vocab,
                     const LstmModel& model) {
    if (vocab.size() != model.V) {
        throw DataError("vocabulary size does not match model input width");
    }
    std::string blob;
    blob.append(kMagic, sizeof(kMagic));
    put_u8(blob, 1);
    put_u64(blob, model.V);
    put_u64(blob, model.D);
    put_u64(blob, model.U);
    put_u64(blob, model.K);
    put_u64(blob, model.F);
    put_u64(blob, model.maxlen);
    put_f64(blob, model.dropout);
    put_vocab(blob, vocab);
    put_tensors(blob, named_params(const_cast<LstmModel&>(model)));
    write_blob(path, blob);
}

CheckpointData load_checkpoint(const std::string& path) {
    std::string blob = read_file(path);
    ByteReader reader{blob};
    reader.need(sizeof(kMagic));
    if (blob.compare(0, sizeof(kMagic), kMagic, sizeof(kMagic)) != 0) {
        throw DataError("not a model checkpoint: " + path);
    }
    reader.pos = sizeof(kMagic);

    CheckpointData data;
    std::uint8_t kind = reader.get_u8();
    if (kind == 0) {
        data.kind = ModelKind::Mlp;
        MlpModel m;
        m.V = reader.get_u64();
        m.H = reader.get_u64();
        m.W1 = Mat(m.V, m.H);
        m.b1 = Vec(m.H, 0.0);
        m.W2 = Mat(m.H, kNumClasses);
        m.b2 = Vec(kNumClasses, 0.0);
        data.vocab = get_vocab(reader);
        get_tensors(reader, named_params(m));
        data.mlp = std::move(m);
    } else if (kind == 1) {
        data.kind = ModelKind::Lstm;
        LstmModel m;
        m.V = reader.get_u64();
        m.D = reader.get_u64();
        m.U = reader.get_u64();
        m.K = reader.get_u64();
        m.F = reader.get_u64();
        m.maxlen = reader.get_u64();
        m.dropout = reader.get_f64();
        m.E = Mat(m.V, m.D);
        for (Mat* w : {&m.Wi, &m.Wf, &m.Wg, &m.Wo}) *w = Mat(m.D, m.U);
        for (Mat* u : {&m.Ui, &m.Uf, &m.Ug, &m.Uo}) *u = Mat(m.U, m.U);
        m.bi = Vec(m.U, 0.0);
        m.bf = Vec(m.U, 0.0);
        m.bg = Vec(m.U, 0.0);
        m.bo = Vec(m.U, 0.0);
        m.Cw = Mat(m.F, m.K * m.U);
        m.cb = Vec(m.F, 0.0);
        m.Wd = Mat(m.F, kNumClasses);
        m.bd = Vec(kNumClasses, 0.0);
        data.vocab = get_vocab(reader);
        get_tensors(reader, named_params(m));
        data.lstm = std::move(m);
    } else {
        throw DataError("unknown checkpoint model kind");
    }
    if (data.vocab.size() != (data.mlp ? data.mlp->V : data.lstm->V)) {
        throw DataError("checkpoint vocabulary size mismatch");
    }
    if (!reader.done()) throw DataError("trailing bytes in checkpoint");
    return data;
}

} // namespace tweetsense

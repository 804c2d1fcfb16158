#ifndef TWEETSENSE_NEURAL_HPP
#define TWEETSENSE_NEURAL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tweetsense/rng.hpp"

namespace tweetsense {

enum class Polarity;

// Fixed class layout shared by both models.
inline constexpr int kNumClasses = 3;
int label_index(Polarity p);          // Negative 0, Neutral 1, Positive 2
Polarity label_from_index(int index);

// ---------------------------------------------------------------------------
// Small dense containers (row-major)
// ---------------------------------------------------------------------------

struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& operator()(std::size_t r, std::size_t c) {
        return data[r * cols + c];
    }
    double operator()(std::size_t r, std::size_t c) const {
        return data[r * cols + c];
    }
    bool operator==(const Mat&) const = default;
};

using Vec = std::vector<double>;

// ---------------------------------------------------------------------------
// Vocabulary and featurization
// ---------------------------------------------------------------------------

inline constexpr std::uint32_t kPadIndex = 0;
inline constexpr std::uint32_t kUnkIndex = 1;

struct Vocabulary {
    // id_to_token[0] = "<pad>", [1] = "<unk>"; the rest most-frequent-first
    // with lexicographic tie-break.
    std::vector<std::string> id_to_token;
    std::unordered_map<std::string, std::uint32_t> token_to_id;

    std::uint32_t size() const {
        return static_cast<std::uint32_t>(id_to_token.size());
    }
    std::uint32_t lookup(const std::string& token) const;
};

// Builds from classifier-mode tokens of texts; keeps the top V-2. V >= 3;
// empty corpus is an error.
Vocabulary build_vocab(const std::vector<std::string>& texts, std::uint32_t V);

using SparseVec = std::vector<std::pair<std::uint32_t, double>>;

Vec vectorize_bow(std::string_view text, const Vocabulary& vocab);
SparseVec vectorize_bow_sparse(std::string_view text, const Vocabulary& vocab);

// Pre-padded with 0, tail-kept when longer than maxlen.
std::vector<std::uint32_t> encode_sequence(std::string_view text,
                                           const Vocabulary& vocab,
                                           std::size_t maxlen);

// ---------------------------------------------------------------------------
// Bag-of-words MLP: softmax(W2^T relu(W1^T x + b1) + b2)
// ---------------------------------------------------------------------------

struct MlpModel {
    std::size_t V = 0;
    std::size_t H = 0;
    Mat W1; // V x H
    Vec b1; // H
    Mat W2; // H x 3
    Vec b2; // 3

    static MlpModel init(std::size_t V, std::size_t H, Rng& rng);
};

std::array<double, kNumClasses> mlp_forward(const Vec& x, const MlpModel& m);
std::array<double, kNumClasses> mlp_forward_sparse(const SparseVec& x,
                                                   const MlpModel& m);

struct MlpGrads {
    Mat W1;
    Vec b1;
    Mat W2;
    Vec b2;

    static MlpGrads zeros_like(const MlpModel& m);
};

// Mean cross-entropy over the batch; gradients accumulated into *grads when
// non-null.
double mlp_loss_and_grads(const std::vector<SparseVec>& xs,
                          const std::vector<int>& ys, const MlpModel& m,
                          MlpGrads* grads);

// ---------------------------------------------------------------------------
// Sequence model: embedding -> LSTM -> dropout -> conv1d -> max-pool ->
// dense softmax
// ---------------------------------------------------------------------------

struct LstmModel {
    std::size_t V = 0;      // vocabulary size
    std::size_t D = 0;      // embedding width
    std::size_t U = 0;      // lstm units
    std::size_t K = 0;      // conv kernel width
    std::size_t F = 0;      // conv filters
    std::size_t maxlen = 0; // sequence length
    double dropout = 0.5;

    Mat E;                  // V x D, row 0 pinned to zero (padding)
    Mat Wi, Wf, Wg, Wo;     // D x U
    Mat Ui, Uf, Ug, Uo;     // U x U
    Vec bi, bf, bg, bo;     // U
    Mat Cw;                 // F x (K*U)
    Vec cb;                 // F
    Mat Wd;                 // F x 3
    Vec bd;                 // 3

    static LstmModel init(std::size_t V, std::size_t D, std::size_t U,
                          std::size_t K, std::size_t F, std::size_t maxlen,
                          double dropout, Rng& rng);
};

// dropout_rng is only consulted when dropout_active is true.
std::array<double, kNumClasses> lstm_forward(
    const std::vector<std::uint32_t>& seq, const LstmModel& m,
    bool dropout_active = false, Rng* dropout_rng = nullptr);

// Hidden/cell state sequences from explicit initial state; used to verify
// the constant-error-carousel property.
struct LstmTrace {
    std::vector<Vec> h;
    std::vector<Vec> c;
};
LstmTrace lstm_states(const std::vector<std::uint32_t>& seq,
                      const LstmModel& m, const Vec& h0, const Vec& c0);

struct LstmGrads {
    Mat E;
    Mat Wi, Wf, Wg, Wo;
    Mat Ui, Uf, Ug, Uo;
    Vec bi, bf, bg, bo;
    Mat Cw;
    Vec cb;
    Mat Wd;
    Vec bd;

    static LstmGrads zeros_like(const LstmModel& m);
};

// Mean cross-entropy; backpropagation through time. dropout_masks, when
// given, holds one maxlen*U inverted-dropout scale per example.
double lstm_loss_and_grads(
    const std::vector<std::vector<std::uint32_t>>& seqs,
    const std::vector<int>& ys, const LstmModel& m, LstmGrads* grads,
    const std::vector<Vec>* dropout_masks = nullptr);

// ---------------------------------------------------------------------------
// Optimizer
// ---------------------------------------------------------------------------

struct NamedParam {
    std::string name;
    std::vector<std::size_t> dims;
    double* data = nullptr;
    std::size_t size = 0;
};

std::vector<NamedParam> named_params(MlpModel& m);
std::vector<NamedParam> named_params(MlpGrads& g);
std::vector<NamedParam> named_params(LstmModel& m);
std::vector<NamedParam> named_params(LstmGrads& g);

struct AdamState {
    double lr = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long long t = 0;
    Vec m;
    Vec v;
};

// Bias-corrected update over one flat span; state grows on first use.
// Throws NumericError on non-finite gradients.
void adam_step(double* params, const double* grads, std::size_t n,
               AdamState& state);
void adam_step(const std::vector<NamedParam>& params,
               const std::vector<NamedParam>& grads, AdamState& state);

// ---------------------------------------------------------------------------
// Training and evaluation
// ---------------------------------------------------------------------------

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> val;
};
SplitIndices split_dataset(std::size_t n, double train_frac,
                           std::uint64_t seed);

struct EpochStats {
    double train_loss = 0.0;
    double train_acc = 0.0;
    double val_acc = 0.0; // NaN-free: 0 when the validation split is empty

    bool operator==(const EpochStats&) const = default;
};

struct MlpHyper {
    std::uint32_t V = 5000;
    std::size_t H = 64;
    std::size_t epochs = 10;
    std::size_t batch = 32;
    double lr = 0.001;
    double train_frac = 0.8;
    std::uint64_t seed = 42;
};

struct LstmHyper {
    std::uint32_t V = 5000;
    std::size_t D = 32;
    std::size_t U = 64;
    std::size_t K = 3;
    std::size_t F = 64;
    std::size_t maxlen = 40;
    double dropout = 0.5;
    std::size_t epochs = 10;
    std::size_t batch = 32;
    double lr = 0.001;
    double train_frac = 0.8;
    std::uint64_t seed = 42;
};

struct MlpTrainResult {
    Vocabulary vocab;
    MlpModel model;
    std::vector<EpochStats> history;
};

struct LstmTrainResult {
    Vocabulary vocab;
    LstmModel model;
    std::vector<EpochStats> history;
};

// Seeded shuffle split; vocabulary from the training split only; mini-batch
// adam on cross-entropy. Error if a class is missing from the training
// split. Deterministic given the seed.
MlpTrainResult train_mlp(const std::vector<std::string>& texts,
                         const std::vector<int>& labels, const MlpHyper& hyper);
LstmTrainResult train_lstm(const std::vector<std::string>& texts,
                           const std::vector<int>& labels,
                           const LstmHyper& hyper);

struct EvalResult {
    double accuracy = 0.0;
    // rows true label, columns predicted
    std::array<std::array<long long, kNumClasses>, kNumClasses> confusion{};
};

EvalResult evaluate_mlp(const Vocabulary& vocab, const MlpModel& model,
                        const std::vector<std::string>& texts,
                        const std::vector<int>& labels);
EvalResult evaluate_lstm(const Vocabulary& vocab, const LstmModel& model,
                         const std::vector<std::string>& texts,
                         const std::vector<int>& labels);

// ---------------------------------------------------------------------------
// Checkpoints: versioned binary header, vocabulary, named f64 tensors with
// shapes, little-endian. Round-trips bit-exactly.
// ---------------------------------------------------------------------------

enum class ModelKind { Mlp, Lstm };

void save_checkpoint(const std::string& path, const Vocabulary& vocab,
                     const MlpModel& model);
void save_checkpoint(const std::string& path, const Vocabulary& vocab,
                     const LstmModel& model);

struct CheckpointData {
    ModelKind kind = ModelKind::Mlp;
    Vocabulary vocab;
    std::optional<MlpModel> mlp;
    std::optional<LstmModel> lstm;
};
CheckpointData load_checkpoint(const std::string& path);

} // namespace tweetsense

#endif

#include "hsif/bilstm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "hsif/errors.hpp"

namespace hsif::nn {

namespace {

using Eigen::Index;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
    return splitmix64(a ^ splitmix64(b ^ splitmix64(c)));
}

Index idx(std::size_t v) { return static_cast<Index>(v); }

Matrix sigmoid(const Matrix& x) { return (1.0 / (1.0 + (-x.array()).exp())).matrix(); }

Matrix glorot(std::size_t rows, std::size_t cols, std::size_t fan_in, std::size_t fan_out, std::mt19937_64& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    std::uniform_real_distribution<double> u(-limit, limit);
    Matrix m(idx(rows), idx(cols));
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c) m(r, c) = u(rng);
    return m;
}

LstmDirection init_direction(std::size_t in, std::size_t h, std::mt19937_64& rng) {
    LstmDirection d;
    d.wx.resize(idx(in), idx(4 * h));
    d.wh.resize(idx(h), idx(4 * h));
    for (std::size_t gate = 0; gate < 4; ++gate) d.wx.middleCols(idx(gate * h), idx(h)) = glorot(in, h, in, h, rng);
    for (std::size_t gate = 0; gate < 4; ++gate) d.wh.middleCols(idx(gate * h), idx(h)) = glorot(h, h, h, h, rng);
    d.b = Matrix::Zero(1, idx(4 * h));
    d.b.middleCols(idx(h), idx(h)).setOnes();
    return d;
}

Matrix dropout_mask(Index rows, Index cols, double rate, std::mt19937_64& rng) {
    std::bernoulli_distribution keep(1.0 - rate);
    const double scale = 1.0 / (1.0 - rate);
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) m(r, c) = keep(rng) ? scale : 0.0;
    return m;
}

void run_direction(const LstmDirection& p, const std::vector<Matrix>& input, bool reverse, std::size_t layer,
                   DirectionCache& dc) {
    const std::size_t steps = input.size();
    const Index b = input.front().rows(), h = p.wh.rows();
    dc.gates.assign(steps, Matrix());
    dc.cell.assign(steps, Matrix());
    dc.tanh_cell.assign(steps, Matrix());
    dc.hidden.assign(steps, Matrix());
    Matrix hprev = Matrix::Zero(b, h), cprev = Matrix::Zero(b, h);
    for (std::size_t s = 0; s < steps; ++s) {
        const std::size_t t = reverse ? steps - 1 - s : s;
        Matrix z = input[t] * p.wx + hprev * p.wh;
        z.rowwise() += p.b.row(0);
        Matrix a(b, 4 * h);
        a.leftCols(h) = sigmoid(z.leftCols(h));
        a.middleCols(h, h) = sigmoid(z.middleCols(h, h));
        a.middleCols(2 * h, h) = z.middleCols(2 * h, h).array().tanh().matrix();
        a.rightCols(h) = sigmoid(z.rightCols(h));
        Matrix c = a.middleCols(h, h).cwiseProduct(cprev) + a.leftCols(h).cwiseProduct(a.middleCols(2 * h, h));
        Matrix tc = c.array().tanh().matrix();
        Matrix hn = a.rightCols(h).cwiseProduct(tc);
        if (!hn.allFinite()) {
            throw Error("non-finite activation in layer " + std::to_string(layer + 1) + " at timestep " +
                        std::to_string(t + 1));
        }
        dc.gates[t] = std::move(a);
        dc.cell[t] = c;
        dc.tanh_cell[t] = std::move(tc);
        dc.hidden[t] = hn;
        hprev = std::move(hn);
        cprev = std::move(c);
    }
}

// Accumulates parameter gradients into `g` and input gradients into `dx`.
void backward_direction(const LstmDirection& p, const DirectionCache& dc, const std::vector<Matrix>& input,
                        const std::vector<Matrix>& dh_out, bool reverse, LstmDirection& g, std::vector<Matrix>& dx) {
    const std::size_t steps = input.size();
    const Index b = input.front().rows(), h = p.wh.rows();
    Matrix dh_next = Matrix::Zero(b, h), dc_next = Matrix::Zero(b, h);
    const Matrix zeros = Matrix::Zero(b, h);
    for (std::size_t s = steps; s-- > 0;) {
        const std::size_t t = reverse ? steps - 1 - s : s;
        const bool first = s == 0;
        const std::size_t tprev = reverse ? t + 1 : t - 1;  // only used when !first
        const Matrix& cprev = first ? zeros : dc.cell[tprev];
        const Matrix& hprev = first ? zeros : dc.hidden[tprev];
        const Matrix& a = dc.gates[t];
        const auto i = a.leftCols(h).array();
        const auto f = a.middleCols(h, h).array();
        const auto gg = a.middleCols(2 * h, h).array();
        const auto o = a.rightCols(h).array();
        const auto tc = dc.tanh_cell[t].array();

        const Eigen::ArrayXXd dh = (dh_out[t] + dh_next).array();
        const Eigen::ArrayXXd dcell = dh * o * (1.0 - tc * tc) + dc_next.array();
        Matrix dz(b, 4 * h);
        dz.leftCols(h) = (dcell * gg * i * (1.0 - i)).matrix();
        dz.middleCols(h, h) = (dcell * cprev.array() * f * (1.0 - f)).matrix();
        dz.middleCols(2 * h, h) = (dcell * i * (1.0 - gg * gg)).matrix();
        dz.rightCols(h) = (dh * tc * o * (1.0 - o)).matrix();

        g.wx.noalias() += input[t].transpose() * dz;
        g.wh.noalias() += hprev.transpose() * dz;
        g.b += dz.colwise().sum();
        dx[t].noalias() += dz * p.wx.transpose();
        dh_next.noalias() = dz * p.wh.transpose();
        dc_next = (dcell * f).matrix();
    }
}

Matrix softmax_rows(const Matrix& logits) {
    Matrix out(logits.rows(), logits.cols());
    for (Index r = 0; r < logits.rows(); ++r) {
        const double m = logits.row(r).maxCoeff();
        const Eigen::RowVectorXd e = (logits.row(r).array() - m).exp().matrix();
        out.row(r) = e / e.sum();
    }
    return out;
}

void check_same_shapes(const NetworkParams& a, const NetworkParams& b) {
    const auto ta = a.tensors();
    const auto tb = b.tensors();
    if (ta.size() != tb.size()) throw InvalidArgument("parameter trees differ");
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (ta[i]->rows() != tb[i]->rows() || ta[i]->cols() != tb[i]->cols())
            throw InvalidArgument("parameter shape mismatch in tensor " + std::to_string(i));
    }
}

double mean_loss_eval(const NetworkParams& params, const SequenceData& data, std::size_t batch_size,
                      double* accuracy) {
    double total = 0.0;
    std::size_t correct = 0;
    for (std::size_t start = 0; start < data.windows.size(); start += batch_size) {
        const std::size_t end = std::min(start + batch_size, data.windows.size());
        std::vector<const Matrix*> ptrs;
        for (std::size_t i = start; i < end; ++i) ptrs.push_back(&data.windows[i]);
        const Matrix probs = forward(params, make_batch(ptrs), Mode::eval, 0);
        for (std::size_t i = start; i < end; ++i) {
            const Index r = idx(i - start);
            total += loss(probs(r, 0), probs(r, 1), data.labels[i]);
            if (predicted_label({probs(r, 0), probs(r, 1)}) == data.labels[i]) ++correct;
        }
    }
    if (accuracy) *accuracy = static_cast<double>(correct) / static_cast<double>(data.windows.size());
    return total / static_cast<double>(data.windows.size());
}

void check_sequences(const SequenceData& d, std::size_t input_dim, const char* what) {
    if (d.windows.empty()) throw InvalidArgument(std::string("empty ") + what + " split");
    if (d.windows.size() != d.labels.size()) throw InvalidArgument(std::string(what) + ": labels/windows mismatch");
    for (const auto& w : d.windows) {
        if (static_cast<std::size_t>(w.cols()) != input_dim) {
            throw InvalidArgument(std::string(what) + ": window has " + std::to_string(w.cols()) +
                                  " features, network expects " + std::to_string(input_dim));
        }
    }
}

}  // namespace

void validate(const Architecture& arch) {
    if (arch.input_dim == 0) throw InvalidArgument("input dimension must be positive");
    if (arch.hidden == 0) throw InvalidArgument("hidden size must be positive");
    if (arch.layers == 0) throw InvalidArgument("layer count must be positive");
    if (!(arch.dropout < 1.0)) throw InvalidArgument("dropout must be < 1");
    if (!(arch.dropout >= 0.0)) throw InvalidArgument("dropout must be >= 0");
}

std::vector<Matrix*> NetworkParams::tensors() {
    std::vector<Matrix*> out;
    for (auto& l : layers) {
        for (auto* d : {&l.forward, &l.backward}) {
            if (d->wx.size() == 0) continue;
            out.push_back(&d->wx);
            out.push_back(&d->wh);
            out.push_back(&d->b);
        }
    }
    out.push_back(&dense_w);
    out.push_back(&dense_b);
    return out;
}

std::vector<const Matrix*> NetworkParams::tensors() const {
    auto mut = const_cast<NetworkParams*>(this)->tensors();
    return std::vector<const Matrix*>(mut.begin(), mut.end());
}

std::size_t NetworkParams::parameter_count() const {
    std::size_t n = 0;
    for (const auto* t : tensors()) n += static_cast<std::size_t>(t->size());
    return n;
}

NetworkParams NetworkParams::zeros_like() const {
    NetworkParams z = *this;
    for (auto* t : z.tensors()) t->setZero();
    return z;
}

bool NetworkParams::operator==(const NetworkParams& other) const {
    if (!(arch == other.arch)) return false;
    const auto a = tensors();
    const auto b = other.tensors();
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i]->rows() != b[i]->rows() || a[i]->cols() != b[i]->cols() || *a[i] != *b[i]) return false;
    }
    return true;
}

NetworkParams init_params(const Architecture& arch, std::uint64_t seed) {
    validate(arch);
    std::mt19937_64 rng(seed);
    NetworkParams p;
    p.arch = arch;
    std::size_t in = arch.input_dim;
    for (std::size_t l = 0; l < arch.layers; ++l) {
        RecurrentLayer layer;
        layer.forward = init_direction(in, arch.hidden, rng);
        if (arch.bidirectional) layer.backward = init_direction(in, arch.hidden, rng);
        p.layers.push_back(std::move(layer));
        in = arch.output_dim();
    }
    p.dense_w = glorot(arch.output_dim(), 2, arch.output_dim(), 2, rng);
    p.dense_b = Matrix::Zero(1, 2);
    return p;
}

Batch make_batch(const std::vector<const Matrix*>& windows) {
    if (windows.empty()) throw InvalidArgument("empty batch");
    const Index steps = windows.front()->rows(), f = windows.front()->cols();
    Batch out(static_cast<std::size_t>(steps), Matrix(idx(windows.size()), f));
    for (std::size_t b = 0; b < windows.size(); ++b) {
        if (windows[b]->rows() != steps || windows[b]->cols() != f)
            throw InvalidArgument("windows in a batch must share their shape");
        for (Index t = 0; t < steps; ++t) out[static_cast<std::size_t>(t)].row(idx(b)) = windows[b]->row(t);
    }
    return out;
}

Batch make_batch(const std::vector<Matrix>& windows) {
    std::vector<const Matrix*> ptrs;
    for (const auto& w : windows) ptrs.push_back(&w);
    return make_batch(ptrs);
}

Matrix forward(const NetworkParams& params, const Batch& steps, Mode mode, std::uint64_t dropout_seed,
               ForwardCache* cache) {
    const auto& arch = params.arch;
    if (steps.empty()) throw InvalidArgument("window must have at least one time step");
    const Index b = steps.front().rows();
    for (const auto& x : steps) {
        if (static_cast<std::size_t>(x.cols()) != arch.input_dim) {
            throw InvalidArgument("input has " + std::to_string(x.cols()) + " features, network expects " +
                                  std::to_string(arch.input_dim));
        }
        if (x.rows() != b) throw InvalidArgument("ragged batch");
    }
    ForwardCache local;
    ForwardCache& fc = cache ? *cache : local;
    fc.layers.assign(arch.layers, LayerCache());

    const bool active = mode == Mode::train && arch.dropout > 0.0;
    std::mt19937_64 rng(dropout_seed);
    const std::size_t T = steps.size();
    const Index h = idx(arch.hidden);

    for (std::size_t l = 0; l < arch.layers; ++l) {
        LayerCache& lc = fc.layers[l];
        lc.input = l == 0 ? steps : std::vector<Matrix>();
        if (l > 0) {
            const LayerCache& prev = fc.layers[l - 1];
            lc.input.resize(T);
            for (std::size_t t = 0; t < T; ++t) {
                Matrix out(b, idx(arch.output_dim()));
                out.leftCols(h) = prev.forward.hidden[t];
                if (arch.bidirectional) out.rightCols(h) = prev.backward.hidden[t];
                if (!prev.mask.empty()) out = out.cwiseProduct(prev.mask[t]);
                lc.input[t] = std::move(out);
            }
        }
        run_direction(params.layers[l].forward, lc.input, false, l, lc.forward);
        if (arch.bidirectional) run_direction(params.layers[l].backward, lc.input, true, l, lc.backward);
        if (active && l + 1 < arch.layers) {
            for (std::size_t t = 0; t < T; ++t) lc.mask.push_back(dropout_mask(b, idx(arch.output_dim()), arch.dropout, rng));
        }
    }

    const LayerCache& last = fc.layers.back();
    fc.k.resize(b, idx(arch.output_dim()));
    fc.k.leftCols(h) = last.forward.hidden[T - 1];
    if (arch.bidirectional) fc.k.rightCols(h) = last.backward.hidden[0];
    if (active) {
        fc.k_mask = dropout_mask(b, fc.k.cols(), arch.dropout, rng);
        fc.k_dropped = fc.k.cwiseProduct(fc.k_mask);
    } else {
        fc.k_mask.resize(0, 0);
        fc.k_dropped = fc.k;
    }
    Matrix logits = fc.k_dropped * params.dense_w;
    logits.rowwise() += params.dense_b.row(0);
    fc.probs = softmax_rows(logits);
    return fc.probs;
}

double loss(double p_down, double p_up, int label) {
    const double p = label == 1 ? p_up : p_down;
    return -std::log(std::max(p, kProbabilityFloor));
}

double loss(const Matrix& probs, const std::vector<int>& labels) {
    if (static_cast<std::size_t>(probs.rows()) != labels.size() || labels.empty())
        throw InvalidArgument("loss: label count does not match batch");
    double total = 0.0;
    for (std::size_t r = 0; r < labels.size(); ++r) total += loss(probs(idx(r), 0), probs(idx(r), 1), labels[r]);
    return total / static_cast<double>(labels.size());
}

NetworkParams backward(const NetworkParams& params, const ForwardCache& cache, const std::vector<int>& labels,
                       double scale) {
    const auto& arch = params.arch;
    if (cache.layers.size() != arch.layers || cache.probs.size() == 0) throw InvalidArgument("missing forward cache");
    const Index b = cache.probs.rows();
    if (static_cast<std::size_t>(b) != labels.size()) throw InvalidArgument("backward: label count does not match batch");
    const std::size_t T = cache.layers.front().input.size();
    const Index h = idx(arch.hidden);

    NetworkParams g = params.zeros_like();
    Matrix dlogits = cache.probs;
    for (Index r = 0; r < b; ++r) {
        const int y = labels[static_cast<std::size_t>(r)];
        if (y != 0 && y != 1) throw InvalidArgument("labels must be 0 or 1");
        if (cache.probs(r, y) < kProbabilityFloor) {
            dlogits.row(r).setZero();  // loss is clamped flat there
        } else {
            dlogits(r, y) -= 1.0;
        }
    }
    dlogits *= scale / static_cast<double>(b);
    g.dense_w = cache.k_dropped.transpose() * dlogits;
    g.dense_b = dlogits.colwise().sum();

    Matrix dk = dlogits * params.dense_w.transpose();
    if (cache.k_mask.size() != 0) dk = dk.cwiseProduct(cache.k_mask);

    std::vector<Matrix> dh_f(T, Matrix::Zero(b, h)), dh_b(T, Matrix::Zero(b, h));
    dh_f[T - 1] = dk.leftCols(h);
    if (arch.bidirectional) dh_b[0] = dk.rightCols(h);

    for (std::size_t l = arch.layers; l-- > 0;) {
        const LayerCache& lc = cache.layers[l];
        const Index in = lc.input.front().cols();
        std::vector<Matrix> dx(T, Matrix::Zero(b, in));
        backward_direction(params.layers[l].forward, lc.forward, lc.input, dh_f, false, g.layers[l].forward, dx);
        if (arch.bidirectional)
            backward_direction(params.layers[l].backward, lc.backward, lc.input, dh_b, true, g.layers[l].backward, dx);
        if (l == 0) break;
        const LayerCache& below = cache.layers[l - 1];
        for (std::size_t t = 0; t < T; ++t) {
            Matrix d = below.mask.empty() ? dx[t] : Matrix(dx[t].cwiseProduct(below.mask[t]));
            dh_f[t] = d.leftCols(h);
            if (arch.bidirectional) dh_b[t] = d.rightCols(h);
        }
    }
    return g;
}

AdamState adam_init(const NetworkParams& params) { return AdamState{params.zeros_like(), params.zeros_like(), 0}; }

void adam_update(Matrix& param, const Matrix& grad, Matrix& m, Matrix& v, std::uint64_t step, const AdamConfig& cfg) {
    if (param.rows() != grad.rows() || param.cols() != grad.cols() || m.rows() != grad.rows() ||
        m.cols() != grad.cols() || v.rows() != grad.rows() || v.cols() != grad.cols())
        throw InvalidArgument("adam: shape mismatch");
    const double t = static_cast<double>(step);
    const double c1 = 1.0 - std::pow(cfg.beta1, t);
    const double c2 = 1.0 - std::pow(cfg.beta2, t);
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * grad.cwiseProduct(grad);
    param.array() -= cfg.learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + cfg.epsilon);
}

void adam_step(NetworkParams& params, const NetworkParams& grads, AdamState& state, const AdamConfig& cfg) {
    check_same_shapes(params, grads);
    check_same_shapes(params, state.m);
    check_same_shapes(params, state.v);
    ++state.step;
    auto p = params.tensors();
    auto g = grads.tensors();
    auto m = state.m.tensors();
    auto v = state.v.tensors();
    for (std::size_t i = 0; i < p.size(); ++i) adam_update(*p[i], *g[i], *m[i], *v[i], state.step, cfg);
}

TrainResult train(const Architecture& arch, const SequenceData& train_set, const SequenceData& validation_set,
                  const TrainConfig& cfg, std::uint64_t seed) {
    validate(arch);
    check_sequences(train_set, arch.input_dim, "training");
    check_sequences(validation_set, arch.input_dim, "validation");
    if (cfg.batch_size == 0) throw InvalidArgument("batch size must be positive");
    if (cfg.max_epochs == 0) throw InvalidArgument("max epochs must be positive");

    NetworkParams params = init_params(arch, seed);
    AdamState state = adam_init(params);
    TrainResult best{params, state, {}};
    TrainReport& report = best.report;
    double best_val = std::numeric_limits<double>::infinity();
    std::size_t stale = 0;

    const std::size_t n = train_set.windows.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        if (cfg.shuffle) {
            std::mt19937_64 shuffle_rng(mix_seed(seed, epoch, 1));
            std::shuffle(order.begin(), order.end(), shuffle_rng);
        }
        double loss_sum = 0.0;
        std::size_t batch_index = 0;
        for (std::size_t start = 0; start < n; start += cfg.batch_size, ++batch_index) {
            const std::size_t end = std::min(start + cfg.batch_size, n);
            std::vector<const Matrix*> ptrs;
            std::vector<int> labels;
            for (std::size_t k = start; k < end; ++k) {
                ptrs.push_back(&train_set.windows[order[k]]);
                labels.push_back(train_set.labels[order[k]]);
            }
            ForwardCache cache;
            forward(params, make_batch(ptrs), Mode::train, mix_seed(seed, epoch, batch_index + 2), &cache);
            const double batch_loss = loss(cache.probs, labels);
            if (!std::isfinite(batch_loss)) {
                throw Error("non-finite loss at epoch " + std::to_string(epoch) + " batch " +
                            std::to_string(batch_index + 1));
            }
            loss_sum += batch_loss * static_cast<double>(labels.size());
            adam_step(params, backward(params, cache, labels), state, cfg.adam);
        }
        double val_acc = 0.0;
        const double val_loss = mean_loss_eval(params, validation_set, 64, &val_acc);
        if (!std::isfinite(val_loss)) throw Error("non-finite validation loss at epoch " + std::to_string(epoch));
        report.train_loss.push_back(loss_sum / static_cast<double>(n));
        report.val_loss.push_back(val_loss);
        report.val_accuracy.push_back(val_acc);

        if (val_loss < best_val - cfg.min_delta) {
            best_val = val_loss;
            best.params = params;
            best.optimizer = state;
            report.best_epoch = epoch;
            stale = 0;
        } else if (++stale >= cfg.patience) {
            report.stop_reason = "patience";
            return best;
        }
    }
    report.stop_reason = "max epochs";
    return best;
}

std::vector<std::array<double, 2>> predict_proba(const NetworkParams& params, const std::vector<Matrix>& windows) {
    std::vector<std::array<double, 2>> out;
    out.reserve(windows.size());
    for (const auto& w : windows) {
        const Matrix p = forward(params, make_batch(std::vector<const Matrix*>{&w}), Mode::eval, 0);
        out.push_back({p(0, 0), p(0, 1)});
    }
    return out;
}

}  // namespace hsif::nn

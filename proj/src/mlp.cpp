#include "isacsim/mlp.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace isacsim::rl {

Mlp::Mlp(const std::vector<int>& widths, OutputActivation activation, Rng& rng)
    : activation_(activation) {
    if (widths.size() < 2) throw std::invalid_argument("mlp: need at least input and output widths");
    layers_.reserve(widths.size() - 1);
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        const int fan_in = widths[l];
        const int fan_out = widths[l + 1];
        if (fan_in <= 0 || fan_out <= 0) throw std::invalid_argument("mlp: nonpositive width");
        Layer layer;
        layer.weight.resize(fan_out, fan_in);
        layer.bias = Eigen::VectorXd::Zero(fan_out);
        const double scale = std::sqrt(6.0 / (fan_in + fan_out));
        for (int r = 0; r < fan_out; ++r) {
            for (int c = 0; c < fan_in; ++c) layer.weight(r, c) = rng.uniform(-scale, scale);
        }
        layers_.push_back(std::move(layer));
    }
}

int Mlp::input_size() const { return layers_.empty() ? 0 : static_cast<int>(layers_.front().weight.cols()); }
int Mlp::output_size() const { return layers_.empty() ? 0 : static_cast<int>(layers_.back().weight.rows()); }

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& input) const {
    Trace trace;
    return forward(input, trace);
}

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& input, Trace& trace) const {
    if (input.size() != input_size()) throw std::invalid_argument("mlp: input dimension mismatch");
    trace.inputs.clear();
    trace.inputs.reserve(layers_.size());
    Eigen::VectorXd h = input;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        trace.inputs.push_back(h);
        Eigen::VectorXd z = layers_[l].weight * h + layers_[l].bias;
        if (l + 1 < layers_.size()) {
            h = z.cwiseMax(0.0);
        } else if (activation_ == OutputActivation::Sigmoid) {
            h = (1.0 + (-z.array()).exp()).inverse().matrix();
        } else {
            h = std::move(z);
        }
    }
    trace.output = h;
    return h;
}

Eigen::VectorXd Mlp::backward(const Trace& trace, const Eigen::VectorXd& upstream,
                              std::vector<Layer>& grads) const {
    if (grads.size() != layers_.size()) throw std::invalid_argument("mlp: gradient buffer mismatch");
    Eigen::VectorXd delta = upstream;
    if (activation_ == OutputActivation::Sigmoid) {
        delta = delta.cwiseProduct(trace.output.cwiseProduct(
            (Eigen::VectorXd::Ones(trace.output.size()) - trace.output)));
    }
    for (int l = static_cast<int>(layers_.size()) - 1; l >= 0; --l) {
        const Eigen::VectorXd& layer_in = trace.inputs[static_cast<std::size_t>(l)];
        grads[static_cast<std::size_t>(l)].weight.noalias() += delta * layer_in.transpose();
        grads[static_cast<std::size_t>(l)].bias += delta;
        if (l == 0) {
            return layers_[0].weight.transpose() * delta;
        }
        Eigen::VectorXd back = layers_[static_cast<std::size_t>(l)].weight.transpose() * delta;
        // ReLU mask of the previous layer's output equals (input > 0) since
        // that input is itself the rectifier output.
        const Eigen::VectorXd& prev_out = trace.inputs[static_cast<std::size_t>(l)];
        delta = back.cwiseProduct(
            (prev_out.array() > 0.0).cast<double>().matrix());
    }
    return {};
}

std::vector<Mlp::Layer> Mlp::zero_like() const {
    std::vector<Layer> grads;
    grads.reserve(layers_.size());
    for (const auto& layer : layers_) {
        Layer g;
        g.weight = Eigen::MatrixXd::Zero(layer.weight.rows(), layer.weight.cols());
        g.bias = Eigen::VectorXd::Zero(layer.bias.size());
        grads.push_back(std::move(g));
    }
    return grads;
}

void Mlp::apply_gradient(const std::vector<Layer>& grads, double learning_rate,
                         double momentum, std::vector<Layer>* velocity) {
    if (grads.size() != layers_.size()) throw std::invalid_argument("mlp: gradient shape mismatch");
    if (momentum > 0.0 && velocity) {
        if (velocity->empty()) *velocity = zero_like();
        for (std::size_t l = 0; l < layers_.size(); ++l) {
            (*velocity)[l].weight = momentum * (*velocity)[l].weight + grads[l].weight;
            (*velocity)[l].bias = momentum * (*velocity)[l].bias + grads[l].bias;
            layers_[l].weight -= learning_rate * (*velocity)[l].weight;
            layers_[l].bias -= learning_rate * (*velocity)[l].bias;
        }
        return;
    }
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        layers_[l].weight -= learning_rate * grads[l].weight;
        layers_[l].bias -= learning_rate * grads[l].bias;
    }
}

void Mlp::copy_weights_from(const Mlp& other) {
    layers_ = other.layers_;
    activation_ = other.activation_;
}

void Mlp::save(std::ostream& out) const {
    out << "mlp v1 " << layers_.size() << ' '
        << (activation_ == OutputActivation::Sigmoid ? "sigmoid" : "identity") << '\n';
    char buf[64];
    for (const auto& layer : layers_) {
        out << layer.weight.rows() << ' ' << layer.weight.cols() << '\n';
        for (int r = 0; r < layer.weight.rows(); ++r) {
            for (int c = 0; c < layer.weight.cols(); ++c) {
                std::snprintf(buf, sizeof buf, "%.17g ", layer.weight(r, c));
                out << buf;
            }
            out << '\n';
        }
        for (int r = 0; r < layer.bias.size(); ++r) {
            std::snprintf(buf, sizeof buf, "%.17g ", layer.bias(r));
            out << buf;
        }
        out << '\n';
    }
}

Mlp Mlp::load(std::istream& in) {
    std::string tag, version, act;
    std::size_t count = 0;
    in >> tag >> version >> count >> act;
    if (tag != "mlp" || version != "v1") throw std::runtime_error("mlp: bad checkpoint header");
    Mlp net;
    net.activation_ = act == "sigmoid" ? OutputActivation::Sigmoid : OutputActivation::Identity;
    net.layers_.resize(count);
    for (auto& layer : net.layers_) {
        int rows = 0, cols = 0;
        in >> rows >> cols;
        if (!in || rows <= 0 || cols <= 0) throw std::runtime_error("mlp: bad layer shape");
        layer.weight.resize(rows, cols);
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) in >> layer.weight(r, c);
        }
        layer.bias.resize(rows);
        for (int r = 0; r < rows; ++r) in >> layer.bias(r);
        if (!in) throw std::runtime_error("mlp: truncated checkpoint");
    }
    return net;
}

} // namespace isacsim::rl

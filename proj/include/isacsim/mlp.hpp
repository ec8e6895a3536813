#ifndef ISACSIM_MLP_HPP
#define ISACSIM_MLP_HPP

#include "isacsim/rng.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <vector>

namespace isacsim::rl {

enum class OutputActivation { Identity, Sigmoid };

// Fully connected rectifier network with reverse-mode gradients. Hidden
// layers use ReLU; the output layer is linear or sigmoid-squashed.
class Mlp {
public:
    struct Layer {
        Eigen::MatrixXd weight;
        Eigen::VectorXd bias;
    };

    Mlp() = default;
    // widths = {input, hidden..., output}
    Mlp(const std::vector<int>& widths, OutputActivation activation, Rng& rng);

    Eigen::VectorXd forward(const Eigen::VectorXd& input) const;

    // Forward pass retaining per-layer activations for backward().
    struct Trace {
        std::vector<Eigen::VectorXd> inputs; // input of each layer
        Eigen::VectorXd output;
    };
    Eigen::VectorXd forward(const Eigen::VectorXd& input, Trace& trace) const;

    // Accumulates d(upstream . output)/d(params) into `grads` (same shapes
    // as the layers) and returns the gradient with respect to the input.
    Eigen::VectorXd backward(const Trace& trace, const Eigen::VectorXd& upstream,
                             std::vector<Layer>& grads) const;

    std::vector<Layer> zero_like() const;
    // Plain gradient-descent step: params -= lr * grads. With momentum
    // enabled the velocity buffer is folded in classically.
    void apply_gradient(const std::vector<Layer>& grads, double learning_rate,
                        double momentum = 0.0, std::vector<Layer>* velocity = nullptr);

    void copy_weights_from(const Mlp& other);

    const std::vector<Layer>& layers() const { return layers_; }
    std::vector<Layer>& layers() { return layers_; }
    int input_size() const;
    int output_size() const;
    OutputActivation activation() const { return activation_; }

    void save(std::ostream& out) const;
    static Mlp load(std::istream& in);

private:
    std::vector<Layer> layers_;
    OutputActivation activation_ = OutputActivation::Identity;
};

} // namespace isacsim::rl

#endif

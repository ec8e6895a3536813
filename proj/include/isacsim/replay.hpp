#ifndef ISACSIM_REPLAY_HPP
#define ISACSIM_REPLAY_HPP

#include "isacsim/rng.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace isacsim::rl {

struct Transition {
    Eigen::VectorXd state;
    Eigen::VectorXd action;
    double reward = 0.0;
    Eigen::VectorXd next_state;
    bool terminal = false;
    double priority = 1.0;
};

// Fixed-capacity ring buffer with priority-proportional sampling
// (probability ~ priority^exponent, with replacement).
class ReplayMemory {
public:
    explicit ReplayMemory(std::size_t capacity, double exponent = 0.6);

    void push(Transition transition);
    // Throws std::logic_error when empty.
    std::vector<std::size_t> sample(std::size_t batch_size, Rng& rng) const;
    void set_priority(std::size_t index, double priority);

    const Transition& at(std::size_t index) const { return items_[index]; }
    std::size_t size() const { return items_.size(); }
    std::size_t capacity() const { return capacity_; }
    double max_priority() const { return max_priority_; }

private:
    std::size_t capacity_;
    double exponent_;
    std::vector<Transition> items_;
    std::size_t write_pos_ = 0; // oldest element once full
    double max_priority_ = 1.0;
};

} // namespace isacsim::rl

#endif

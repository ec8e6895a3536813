#include "isacsim/replay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isacsim::rl {

ReplayMemory::ReplayMemory(std::size_t capacity, double exponent)
    : capacity_(capacity), exponent_(exponent) {
    if (capacity_ == 0) throw std::invalid_argument("replay: capacity must be positive");
    items_.reserve(capacity_);
}

void ReplayMemory::push(Transition transition) {
    max_priority_ = std::max(max_priority_, transition.priority);
    if (items_.size() < capacity_) {
        items_.push_back(std::move(transition));
        return;
    }
    items_[write_pos_] = std::move(transition);
    write_pos_ = (write_pos_ + 1) % capacity_;
}

std::vector<std::size_t> ReplayMemory::sample(std::size_t batch_size, Rng& rng) const {
    if (items_.empty()) throw std::logic_error("replay: sample from empty memory");
    std::vector<double> cumulative(items_.size());
    double total = 0.0;
    for (std::size_t i = 0; i < items_.size(); ++i) {
        total += std::pow(items_[i].priority, exponent_);
        cumulative[i] = total;
    }
    std::vector<std::size_t> out(batch_size);
    for (std::size_t b = 0; b < batch_size; ++b) {
        const double u = rng.uniform() * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        out[b] = std::min<std::size_t>(
            static_cast<std::size_t>(it - cumulative.begin()), items_.size() - 1);
    }
    return out;
}

void ReplayMemory::set_priority(std::size_t index, double priority) {
    if (index >= items_.size()) throw std::out_of_range("replay: priority index");
    items_[index].priority = priority;
    max_priority_ = std::max(max_priority_, priority);
}

} // namespace isacsim::rl

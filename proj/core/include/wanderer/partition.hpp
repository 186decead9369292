#ifndef WANDERER_PARTITION_HPP
#define WANDERER_PARTITION_HPP

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace wanderer {

class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<std::int64_t> parts);
    explicit Partition(std::vector<std::int64_t> parts);

    // 1-based part access; zero beyond the length
    std::int64_t part(std::size_t i) const { return i >= 1 && i <= parts_.size() ? parts_[i - 1] : 0; }
    std::size_t length() const { return parts_.size(); }
    std::int64_t weight() const;
    bool empty() const { return parts_.empty(); }
    const std::vector<std::int64_t>& parts() const { return parts_; }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

private:
    std::vector<std::int64_t> parts_;
};

using PartitionSequence = std::vector<Partition>;

std::string to_string(const Partition& p);
Partition parse_partition(const std::string& text);

// lam interlaces mu from above: lam_1 >= mu_1 >= lam_2 >= mu_2 >= ...
bool interlaces(const Partition& lam, const Partition& mu);
// lam_i >= mu_i for all i
bool contains(const Partition& lam, const Partition& mu);

double skew_schur_one(const Partition& lam, const Partition& mu, double x);
double skew_schur_multi(const Partition& lam, const Partition& mu, const std::vector<double>& xs);

double schur_process_weight(const PartitionSequence& seq, const std::vector<double>& X,
                            const std::vector<double>& Y);

struct SupportEnumeration {
    std::vector<std::pair<PartitionSequence, double>> states;
    double tail = 0.0;
};

SupportEnumeration enumerate_support(std::size_t M, const std::vector<double>& X,
                                     const std::vector<double>& Y, std::int64_t cap,
                                     std::size_t node_budget = 5'000'000);

std::string sequence_key(const PartitionSequence& seq);

}  // namespace wanderer

#endif

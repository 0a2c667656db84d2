#include "mscluster/partition.hpp"

#include <unordered_map>

#include "mscluster/errors.hpp"
#include "mscluster/rng.hpp"

namespace mscluster {

Partition Partition::from_assignment(std::span<const int> raw) {
    Partition p;
    p.assignment_.resize(raw.size());
    std::unordered_map<int, int> relabel;
    relabel.reserve(raw.size());
    int next = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto [it, inserted] = relabel.try_emplace(raw[i], next);
        if (inserted)
            ++next;
        p.assignment_[i] = it->second;
    }
    p.c_ = next;
    return p;
}

Partition Partition::singletons(int n) {
    Partition p;
    p.assignment_.resize(n);
    for (int i = 0; i < n; ++i)
        p.assignment_[i] = i;
    p.c_ = n;
    return p;
}

Partition Partition::all_in_one(int n) {
    Partition p;
    p.assignment_.assign(n, 0);
    p.c_ = n > 0 ? 1 : 0;
    return p;
}

std::vector<std::vector<int>> Partition::groups() const {
    std::vector<std::vector<int>> out(c_);
    for (int i = 0; i < size(); ++i)
        out[assignment_[i]].push_back(i);
    return out;
}

std::vector<int> Partition::group_sizes() const {
    std::vector<int> sizes(c_, 0);
    for (int a : assignment_)
        ++sizes[a];
    return sizes;
}

std::uint64_t Partition::hash() const {
    std::uint64_t h = splitmix64(static_cast<std::uint64_t>(assignment_.size()));
    for (int a : assignment_)
        h = splitmix64(h ^ static_cast<std::uint64_t>(a));
    return h;
}

} // namespace mscluster

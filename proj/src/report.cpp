#include "ringlab/report.hpp"

#include <algorithm>
#include <chrono>

namespace ringlab {

std::int64_t current_timestamp() {
    auto now = std::chrono::system_clock::now();
    return std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
}

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.status != "fail"; });
}

void Report::absorb(const std::string& prefix, const Report& sub) {
    for (const Check& c : sub.checks) checks.push_back({prefix + "/" + c.name, c.status, c.detail});
    if (!sub.counts.empty()) counts[prefix] = sub.counts;
}

nlohmann::json Report::to_json(bool with_timestamp) const {
    nlohmann::json j;
    j["suite"] = suite;
    j["spec"] = spec;
    j["k"] = k;
    j["mode"] = mode;
    j["seed"] = seed;
    std::vector<const Check*> order;
    order.reserve(checks.size());
    for (const Check& c : checks) order.push_back(&c);
    std::stable_sort(order.begin(), order.end(),
                     [](const Check* a, const Check* b) { return a->name < b->name; });
    nlohmann::json arr = nlohmann::json::array();
    for (const Check* c : order) {
        nlohmann::json item{{"name", c->name}, {"status", c->status}};
        if (!c->detail.is_null()) item["counterexample"] = c->detail;
        arr.push_back(std::move(item));
    }
    j["checks"] = std::move(arr);
    j["counts"] = counts;
    if (with_timestamp) j["generated_at"] = current_timestamp();
    return j;
}

}  // namespace ringlab

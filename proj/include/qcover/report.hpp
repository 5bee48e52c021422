#pragma once

// Verification report plumbing.  Every check emits one flat record; a report
// is one JSON object per line so a stream stays greppable and appendable.
// Records carry the seed that produced them, and a merged report is sorted by
// (suite, anchor, params) so concurrent runs serialize identically.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

namespace qcover {

struct ReportRecord {
    std::string suite;
    std::string anchor;
    nlohmann::json params = nlohmann::json::object();
    bool pass = false;
    long millis = 0;
};

using Records = std::vector<ReportRecord>;

// collects the records of one suite; the body of a check may attach
// counterexample data to the params it is handed
class SuiteLog {
  public:
    SuiteLog(std::string suite, std::uint64_t seed) : suite_(std::move(suite)), rng_(seed) {}

    const std::string& name() const { return suite_; }
    std::mt19937_64& rng() { return rng_; }

    bool check(const std::string& anchor, nlohmann::json params,
               const std::function<bool(nlohmann::json&)>& body) {
        ReportRecord r;
        r.suite = suite_;
        r.anchor = anchor;
        r.params = std::move(params);
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.pass = body(r.params);
        } catch (const std::exception& e) {
            r.pass = false;
            r.params["error"] = e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        r.millis =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        recs_.push_back(std::move(r));
        return recs_.back().pass;
    }

    bool all_pass() const {
        for (auto& r : recs_)
            if (!r.pass) return false;
        return true;
    }

    Records take() { return std::move(recs_); }

  private:
    std::string suite_;
    std::mt19937_64 rng_;
    Records recs_;
};

inline nlohmann::json record_json(const ReportRecord& r, std::uint64_t seed) {
    return nlohmann::json{{"suite", r.suite},   {"anchor", r.anchor}, {"params", r.params},
                          {"pass", r.pass},     {"millis", r.millis}, {"seed", seed}};
}

// canonical order: suite rank in the given list, then anchor, then params
inline void sort_records(Records& recs, const std::vector<std::string>& suite_order) {
    auto rank = [&](const std::string& s) {
        for (size_t k = 0; k < suite_order.size(); ++k)
            if (suite_order[k] == s) return k;
        return suite_order.size();
    };
    std::stable_sort(recs.begin(), recs.end(), [&](const ReportRecord& a, const ReportRecord& b) {
        size_t ra = rank(a.suite), rb = rank(b.suite);
        if (ra != rb) return ra < rb;
        if (a.anchor != b.anchor) return a.anchor < b.anchor;
        return a.params.dump() < b.params.dump();
    });
}

inline void write_jsonl(std::ostream& os, const Records& recs, std::uint64_t seed) {
    for (auto& r : recs) os << record_json(r, seed).dump() << "\n";
}

}  // namespace qcover

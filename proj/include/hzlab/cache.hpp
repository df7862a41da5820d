#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <unordered_map>

namespace hzlab {

// Append-only store of critical-line values zeta(1/2+it, y), one decimal
// text row per point ("y t re im tag", 17 significant digits).  The file
// starts with the header line "HZCACHE v1"; a bad header or a malformed
// row marks the whole cache corrupt and it is ignored (lookups fall back
// to plain evaluation, nothing is appended).
//
// Reads hit an immutable snapshot loaded at construction; rows appended
// during the run go through a single mutex-serialized writer and are
// visible to later lookups in the same run.
class CacheStore {
public:
    static constexpr const char* kHeaderLine = "HZCACHE v1";
    static constexpr const char* kFileName = "zeta_line.cache";

    CacheStore();  // disabled: every lookup evaluates
    explicit CacheStore(const std::filesystem::path& dir);

    bool enabled() const { return enabled_; }
    bool corrupt() const { return corrupt_; }
    const std::string& corrupt_reason() const { return corrupt_reason_; }
    std::size_t snapshot_size() const { return snapshot_.size(); }

    // Cached value when present with tag >= precision_tag; otherwise
    // evaluates zeta(1/2+it, y) at target 10^-tag, appends, returns.
    std::complex<double> lookup_or_eval(double y, double t, int precision_tag);

    // Number of actual evaluator invocations so far.
    std::int64_t eval_count() const { return evals_.load(); }

    // Strict parse; throws CacheCorrupt naming the defect.
    static void validate_file(const std::filesystem::path& file);

private:
    struct Key {
        double y;
        double t;
        bool operator==(const Key& o) const { return y == o.y && t == o.t; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };
    struct Entry {
        std::complex<double> value;
        int tag = 0;
    };
    using Map = std::unordered_map<Key, Entry, KeyHash>;

    static Map parse_file(const std::filesystem::path& file);

    bool enabled_ = false;
    bool corrupt_ = false;
    std::string corrupt_reason_;
    std::filesystem::path file_;
    Map snapshot_;  // immutable after construction
    Map overlay_;   // in-run appends, guarded by mu_
    std::mutex mu_;
    std::ofstream append_;
    std::atomic<std::int64_t> evals_{0};
};

}  // namespace hzlab

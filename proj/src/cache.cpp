#include "hzlab/cache.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hzlab/errors.hpp"
#include "hzlab/hurwitz.hpp"

namespace hzlab {

namespace {

int clamp_tag(int tag) {
    return tag < 1 ? 1 : (tag > 16 ? 16 : tag);
}

std::string format_row(double y, double t, std::complex<double> v, int tag) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g %d", y, t,
                  v.real(), v.imag(), tag);
    return buf;
}

}  // namespace

std::size_t CacheStore::KeyHash::operator()(const Key& k) const {
    const auto a = std::bit_cast<std::uint64_t>(k.y);
    const auto b = std::bit_cast<std::uint64_t>(k.t);
    std::uint64_t h = a * 0x9e3779b97f4a7c15ULL;
    h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
}

CacheStore::Map CacheStore::parse_file(const std::filesystem::path& file) {
    Map map;
    std::ifstream in(file);
    if (!in) return map;  // absent file: empty cache, not corrupt
    std::string line;
    if (!std::getline(in, line) || line != kHeaderLine) {
        throw CacheCorrupt("cache header mismatch in " + file.string());
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        double y, t, re, im;
        int tag;
        if (!(row >> y >> t >> re >> im >> tag)) {
            throw CacheCorrupt("malformed cache row " +
                               std::to_string(line_no) + " in " +
                               file.string());
        }
        std::string rest;
        if (row >> rest) {
            throw CacheCorrupt("trailing junk on cache row " +
                               std::to_string(line_no) + " in " +
                               file.string());
        }
        if (!(std::isfinite(y) && std::isfinite(t) && std::isfinite(re) &&
              std::isfinite(im))) {
            throw CacheCorrupt("non-finite cache row " +
                               std::to_string(line_no) + " in " +
                               file.string());
        }
        auto [it, inserted] = map.try_emplace(Key{y, t}, Entry{{re, im}, tag});
        if (!inserted && tag > it->second.tag) {
            it->second = Entry{{re, im}, tag};  // later, higher-tag row wins
        }
    }
    return map;
}

void CacheStore::validate_file(const std::filesystem::path& file) {
    parse_file(file);
}

CacheStore::CacheStore() = default;

CacheStore::CacheStore(const std::filesystem::path& dir) {
    enabled_ = true;
    std::filesystem::create_directories(dir);
    file_ = dir / kFileName;
    try {
        snapshot_ = parse_file(file_);
    } catch (const CacheCorrupt& e) {
        corrupt_ = true;
        corrupt_reason_ = e.what();
        snapshot_.clear();
        return;  // corrupt cache is ignored, not trusted, not appended to
    }
    const bool fresh = !std::filesystem::exists(file_);
    append_.open(file_, std::ios::app);
    if (fresh && append_) {
        append_ << kHeaderLine << '\n';
        append_.flush();
    }
}

std::complex<double> CacheStore::lookup_or_eval(double y, double t,
                                                int precision_tag) {
    const int tag = clamp_tag(precision_tag);
    const Key key{y, t};
    if (enabled_ && !corrupt_) {
        const auto hit = snapshot_.find(key);
        if (hit != snapshot_.end() && hit->second.tag >= tag) {
            return hit->second.value;
        }
        {
            std::lock_guard<std::mutex> lock(mu_);
            const auto over = overlay_.find(key);
            if (over != overlay_.end() && over->second.tag >= tag) {
                return over->second.value;
            }
        }
    }

    const double target = std::pow(10.0, -tag);
    const std::complex<double> value = hurwitz_eval(
        {0.5, t, y}, EulerMaclaurinParams::for_height(t, target));
    evals_.fetch_add(1);

    if (enabled_ && !corrupt_) {
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = overlay_.try_emplace(key, Entry{value, tag});
        if (!inserted && tag > it->second.tag) {
            it->second = Entry{value, tag};
        }
        if (append_) {
            append_ << format_row(y, t, value, tag) << '\n';
            append_.flush();
        }
    }
    return value;
}

}  // namespace hzlab

#include "weylab/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "weylab/errors.hpp"

namespace weylab {

CountCache::CountCache(std::string dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    csv_path_ = dir_ + "/counts.csv";
    index_path_ = dir_ + "/counts.index";
    load();
}

std::string CountCache::key(long long s, long long d, long long N, const std::string& kind,
                            const std::string& param) {
    std::ostringstream os;
    os << s << ',' << d << ',' << N << ',' << kind << ',' << param;
    return os.str();
}

std::string CountCache::h_param(const std::vector<long long>& h) {
    std::ostringstream os;
    os << "h=";
    for (size_t i = 0; i < h.size(); ++i) os << (i ? ":" : "") << h[i];
    return os.str();
}

std::string CountCache::delta_param(double delta) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "delta=%.17g", delta);
    return buf;
}

void CountCache::load() {
    std::ifstream in(csv_path_);
    if (!in) return;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto last = line.rfind(',');
        if (last == std::string::npos) continue;
        entries_[line.substr(0, last)] = std::stoll(line.substr(last + 1));
    }
}

std::optional<long long> CountCache::lookup(long long s, long long d, long long N,
                                            const std::string& kind,
                                            const std::string& param) const {
    auto it = entries_.find(key(s, d, N, kind, param));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void CountCache::store(long long s, long long d, long long N, const std::string& kind,
                       const std::string& param, long long count) {
    std::string k = key(s, d, N, kind, param);
    auto it = entries_.find(k);
    if (it != entries_.end()) {
        if (it->second != count)
            throw IdentityError("count cache mismatch for " + k + ": stored " +
                                std::to_string(it->second) + ", recomputed " +
                                std::to_string(count));
        return;
    }
    bool fresh = entries_.empty() && !std::filesystem::exists(csv_path_);
    entries_[k] = count;
    std::ofstream out(csv_path_, std::ios::app);
    if (fresh) out << "s,d,N,kind,param,count\n";
    out << k << ',' << count << '\n';
    // index: one key per line, kept in lookup order for quick greps
    std::ofstream idx(index_path_, std::ios::app);
    idx << k << '\n';
}

}  // namespace weylab

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace weylab {

// Append-only CSV cache for exact counts. Rows:
//   s,d,N,kind,param,count
// kind in {J, Jh, Jbox}; param is "h=1:2:3" or "delta=<17 digits>" or "".
// A hit returns the stored integer, so a replay is byte-identical.
class CountCache {
  public:
    explicit CountCache(std::string dir);

    std::optional<long long> lookup(long long s, long long d, long long N,
                                    const std::string& kind, const std::string& param) const;
    void store(long long s, long long d, long long N, const std::string& kind,
               const std::string& param, long long count);

    static std::string h_param(const std::vector<long long>& h);
    static std::string delta_param(double delta);

    const std::string& path() const { return csv_path_; }
    size_t size() const { return entries_.size(); }

  private:
    std::string dir_, csv_path_, index_path_;
    std::map<std::string, long long> entries_;

    static std::string key(long long s, long long d, long long N, const std::string& kind,
                           const std::string& param);
    void load();
};

}  // namespace weylab

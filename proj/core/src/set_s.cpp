#include "hypsum/set_s.hpp"

#include <algorithm>
#include <sstream>

namespace hypsum {

SetS::SetS(std::vector<u64> explicit_members, std::optional<u64> cofinite_from)
    : explicit_(std::move(explicit_members)), cofinite_from_(cofinite_from) {
  std::sort(explicit_.begin(), explicit_.end());
  explicit_.erase(std::unique(explicit_.begin(), explicit_.end()), explicit_.end());
  for (u64 nu : explicit_)
    if (nu < 1) throw UsageError("SetS: members must be positive");
  if (cofinite_from_) {
    if (*cofinite_from_ < 1) throw UsageError("SetS: cofinite_from must be positive");
    // drop explicit entries already covered by the tail
    explicit_.erase(
        std::remove_if(explicit_.begin(), explicit_.end(),
                       [&](u64 nu) { return nu >= *cofinite_from_; }),
        explicit_.end());
  }
  if (!contains(1)) throw UsageError("SetS: 1 must be a member");
}

SetS SetS::all() { return SetS({}, 1); }

SetS SetS::single(u64 nu) { return SetS({nu}, std::nullopt); }

SetS SetS::parse(const std::string& text) {
  if (text == "all" || text == "N") return all();
  std::vector<u64> members;
  std::optional<u64> from;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item.rfind("from:", 0) == 0) {
      from = std::stoull(item.substr(5));
    } else {
      size_t pos = 0;
      u64 v = std::stoull(item, &pos);
      if (pos != item.size()) throw UsageError("SetS: bad member '" + item + "'");
      members.push_back(v);
    }
  }
  return SetS(std::move(members), from);
}

bool SetS::contains(u64 nu) const {
  if (cofinite_from_ && nu >= *cofinite_from_) return true;
  return std::binary_search(explicit_.begin(), explicit_.end(), nu);
}

u64 SetS::count_upto(u64 e) const {
  u64 c = u64(std::upper_bound(explicit_.begin(), explicit_.end(), e) - explicit_.begin());
  if (cofinite_from_ && e >= *cofinite_from_) c += e - *cofinite_from_ + 1;
  return c;
}

std::string SetS::to_string() const {
  if (is_all()) return "all";
  std::string s;
  for (size_t i = 0; i < explicit_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(explicit_[i]);
  }
  if (cofinite_from_) {
    if (!s.empty()) s += ',';
    s += "from:" + std::to_string(*cofinite_from_);
  }
  return s;
}

}  // namespace hypsum

#include "fekete/multi_index.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace fekete {

namespace {

void validate(const std::vector<std::uint64_t>& coords) {
  if (coords.empty()) throw std::invalid_argument("MultiIndex: dimension must be at least 1");
  for (auto c : coords) {
    if (c < 1) throw std::invalid_argument("MultiIndex: coordinates must be >= 1");
  }
}

void require_same_dimension(const MultiIndex& x, const MultiIndex& y) {
  if (x.dimension() != y.dimension()) {
    throw std::invalid_argument("MultiIndex: dimension mismatch (" + x.to_string() + " vs " +
                                y.to_string() + ")");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

MultiIndex::MultiIndex(std::initializer_list<std::uint64_t> coords) : coords_(coords) {
  validate(coords_);
}

MultiIndex::MultiIndex(std::vector<std::uint64_t> coords) : coords_(std::move(coords)) {
  validate(coords_);
}

MultiIndex MultiIndex::diagonal(std::size_t dimension, std::uint64_t value) {
  return MultiIndex(std::vector<std::uint64_t>(dimension, value));
}

MultiIndex MultiIndex::with(std::size_t j, std::uint64_t value) const {
  auto coords = coords_;
  coords.at(j) = value;
  return MultiIndex(std::move(coords));
}

std::uint64_t MultiIndex::volume() const {
  std::uint64_t v = 1;
  for (auto c : coords_) {
    if (v > UINT64_MAX / c) throw std::overflow_error("MultiIndex: volume overflows 64 bits");
    v *= c;
  }
  return v;
}

double MultiIndex::volume_d() const {
  double v = 1.0;
  for (auto c : coords_) v *= static_cast<double>(c);
  return v;
}

std::string MultiIndex::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(coords_[i]);
  }
  return out;
}

bool leq_pi(const MultiIndex& x, const MultiIndex& y) {
  require_same_dimension(x, y);
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    if (x[i] > y[i]) return false;
  }
  return true;
}

MultiIndex join(const MultiIndex& x, const MultiIndex& y) {
  require_same_dimension(x, y);
  std::vector<std::uint64_t> z(x.dimension());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::max(x[i], y[i]);
  return MultiIndex(std::move(z));
}

MultiIndex parse_sides(std::string_view text) {
  std::vector<std::uint64_t> coords;
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("sides: empty string");
  while (true) {
    const auto pos = text.find_first_of("xX");
    const auto token = trim(text.substr(0, pos));
    std::uint64_t value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc() || ptr != end) {
      throw std::invalid_argument("sides: cannot parse '" + std::string(token) + "'");
    }
    coords.push_back(value);
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return MultiIndex(std::move(coords));
}

std::vector<MultiIndex> parse_sides_list(std::string_view text) {
  std::vector<MultiIndex> out;
  while (true) {
    const auto pos = text.find(',');
    out.push_back(parse_sides(text.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

std::vector<MultiIndex> boxes_below(const MultiIndex& box) {
  std::vector<MultiIndex> out;
  std::vector<std::uint64_t> cur(box.dimension(), 1);
  while (true) {
    out.emplace_back(cur);
    std::size_t i = cur.size();
    while (i > 0) {
      --i;
      if (cur[i] < box[i]) {
        ++cur[i];
        break;
      }
      cur[i] = 1;
      if (i == 0) return out;
    }
  }
}

}  // namespace fekete

#include "nerode/signal.hpp"

#include <algorithm>
#include <unordered_map>

#include "nerode/errors.hpp"

namespace nerode {

struct Alphabet::Data {
  std::vector<std::string> symbols;
  std::unordered_map<std::string, Symbol> lookup;
  Symbol default_symbol = 0;
};

Alphabet::Alphabet(std::vector<std::string> symbols,
                   std::string_view default_symbol) {
  if (symbols.empty()) throw InputError("alphabet has no symbols");
  auto data = std::make_shared<Data>();
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    auto [it, fresh] = data->lookup.emplace(symbols[i], static_cast<Symbol>(i));
    if (!fresh) throw InputError("duplicate symbol '" + symbols[i] + "'");
  }
  auto it = data->lookup.find(std::string(default_symbol));
  if (it == data->lookup.end()) {
    throw InputError("default symbol '" + std::string(default_symbol) +
                     "' is not in the alphabet");
  }
  data->default_symbol = it->second;
  data->symbols = std::move(symbols);
  data_ = std::move(data);
}

Alphabet Alphabet::range(std::size_t k) {
  std::vector<std::string> symbols;
  symbols.reserve(k);
  for (std::size_t i = 0; i < k; ++i) symbols.push_back(std::to_string(i));
  return Alphabet(std::move(symbols), "0");
}

std::size_t Alphabet::size() const noexcept { return data_->symbols.size(); }

const std::vector<std::string>& Alphabet::symbols() const noexcept {
  return data_->symbols;
}

const std::string& Alphabet::label(Symbol s) const {
  if (s >= data_->symbols.size()) {
    throw InputError("symbol index " + std::to_string(s) +
                     " outside alphabet");
  }
  return data_->symbols[s];
}

std::optional<Symbol> Alphabet::find(std::string_view label) const {
  auto it = data_->lookup.find(std::string(label));
  if (it == data_->lookup.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::index_of(std::string_view label) const {
  if (auto s = find(label)) return *s;
  throw InputError("symbol '" + std::string(label) + "' is not in the alphabet");
}

Symbol Alphabet::default_symbol() const noexcept {
  return data_->default_symbol;
}

const std::string& Alphabet::default_label() const {
  return data_->symbols[data_->default_symbol];
}

bool operator==(const Alphabet& a, const Alphabet& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->default_symbol == b.data_->default_symbol &&
         a.data_->symbols == b.data_->symbols;
}

// IndexSet

IndexSet IndexSet::before(Index n) { return IndexSet(Kind::kBefore, n, {}); }
IndexSet IndexSet::from(Index n) { return IndexSet(Kind::kFrom, n, {}); }
IndexSet IndexSet::all() { return IndexSet(Kind::kAll, 0, {}); }

IndexSet IndexSet::finite(std::vector<Index> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return IndexSet(Kind::kFinite, 0, std::move(indices));
}

bool IndexSet::contains(Index k) const {
  switch (kind_) {
    case Kind::kBefore: return k < bound_;
    case Kind::kFrom: return k >= bound_;
    case Kind::kFinite:
      return std::binary_search(indices_.begin(), indices_.end(), k);
    case Kind::kAll: return true;
  }
  return false;
}

IndexSet IndexSet::translated(Index n) const {
  if (kind_ == Kind::kFinite) {
    std::vector<Index> moved(indices_);
    for (auto& k : moved) k += n;
    return IndexSet(kind_, 0, std::move(moved));
  }
  if (kind_ == Kind::kAll) return *this;
  return IndexSet(kind_, bound_ + n, {});
}

// Sequence

Sequence::Sequence(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

Sequence Sequence::canonicalize(Alphabet alphabet, Index start,
                                std::vector<Symbol> raw) {
  const Symbol o = alphabet.default_symbol();
  for (Symbol s : raw) {
    if (s >= alphabet.size()) {
      throw InputError("symbol index " + std::to_string(s) +
                       " outside alphabet");
    }
  }
  auto first = std::find_if(raw.begin(), raw.end(),
                            [o](Symbol s) { return s != o; });
  if (first == raw.end()) return Sequence(std::move(alphabet));
  auto last = std::find_if(raw.rbegin(), raw.rend(),
                           [o](Symbol s) { return s != o; }).base();
  const Index lead = first - raw.begin();
  std::vector<Symbol> trimmed(first, last);
  return Sequence(std::move(alphabet), start + lead, std::move(trimmed));
}

Sequence Sequence::from_labels(Alphabet alphabet, Index start,
                               const std::vector<std::string>& labels) {
  std::vector<Symbol> raw;
  raw.reserve(labels.size());
  for (const auto& l : labels) raw.push_back(alphabet.index_of(l));
  return canonicalize(std::move(alphabet), start, std::move(raw));
}

Symbol Sequence::at(Index k) const noexcept {
  if (k < start_ || k >= end()) return alphabet_.default_symbol();
  return values_[static_cast<std::size_t>(k - start_)];
}

std::vector<std::string> Sequence::labels() const {
  std::vector<std::string> out;
  out.reserve(values_.size());
  for (Symbol s : values_) out.push_back(alphabet_.label(s));
  return out;
}

Sequence canonicalize(Index start, std::vector<Symbol> raw,
                      const Alphabet& alphabet) {
  return Sequence::canonicalize(alphabet, start, std::move(raw));
}

// Operators

Sequence shift(const Sequence& u, Index n) {
  if (u.is_constant()) return u;
  const auto v = u.values();
  return Sequence::canonicalize(u.alphabet(), u.start() - n,
                                std::vector<Symbol>(v.begin(), v.end()));
}

Sequence project(const Sequence& u, const IndexSet& a) {
  if (u.is_constant()) return u;
  const Symbol o = u.alphabet().default_symbol();
  std::vector<Symbol> raw;
  raw.reserve(u.values().size());
  for (Index k = u.start(); k < u.end(); ++k) {
    raw.push_back(a.contains(k) ? u.at(k) : o);
  }
  return Sequence::canonicalize(u.alphabet(), u.start(), std::move(raw));
}

Sequence concat(const Sequence& u1, const Sequence& u2, Index n) {
  if (!(u1.alphabet() == u2.alphabet())) {
    throw InputError("concat: sequences are over different alphabets");
  }
  // The result agrees with the default outside [lo, hi).
  const Index lo = std::min(u1.is_constant() ? n : u1.start(),
                            u2.is_constant() ? n : u2.start());
  const Index hi = std::max(u1.is_constant() ? n : u1.end(),
                            u2.is_constant() ? n : u2.end());
  std::vector<Symbol> raw;
  raw.reserve(static_cast<std::size_t>(std::max<Index>(hi - lo, 0)));
  for (Index k = lo; k < hi; ++k) raw.push_back(k < n ? u1.at(k) : u2.at(k));
  return Sequence::canonicalize(u1.alphabet(), lo, std::move(raw));
}

Sequence insert(const Sequence& u, Symbol a, Index n) {
  if (a >= u.alphabet().size()) {
    throw InputError("insert: symbol index " + std::to_string(a) +
                     " outside alphabet");
  }
  const Index lo = u.is_constant() ? n : std::min(u.start(), n);
  const Index hi = u.is_constant() ? n + 1 : std::max(u.end(), n + 1);
  std::vector<Symbol> raw;
  raw.reserve(static_cast<std::size_t>(hi - lo));
  for (Index k = lo; k < hi; ++k) raw.push_back(k == n ? a : u.at(k));
  return Sequence::canonicalize(u.alphabet(), lo, std::move(raw));
}

}  // namespace nerode

#include "qsp/uq.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qsp {

bool UMonomial::operator<(const UMonomial& o) const {
  if (f != o.f) return f < o.f;
  if (mu != o.mu) return mu < o.mu;
  return e < o.e;
}

void UElement::add(const UMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

UElement UElement::operator+(const UElement& o) const {
  UElement r(*this);
  r += o;
  return r;
}

UElement UElement::operator-(const UElement& o) const {
  UElement r(*this);
  r -= o;
  return r;
}

UElement UElement::operator-() const {
  UElement r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

UElement UElement::operator*(const Scalar& c) const {
  UElement r;
  if (c.is_zero()) return r;
  for (const auto& [m, s] : terms_) r.terms_.emplace(m, s * c);
  return r;
}

UElement& UElement::operator+=(const UElement& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

UElement& UElement::operator-=(const UElement& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

namespace {
std::string word_str(const char* letter, const Word& w) {
  std::string s;
  for (size_t k = 0; k < w.size(); ++k) {
    if (k) s += " ";
    s += letter;
    s += std::to_string(w[k] + 1);
  }
  return s;
}
}  // namespace

std::string UElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.to_string() << ")";
    if (!m.f.empty()) out << " " << word_str("F", m.f);
    if (!qsp::is_zero(m.mu)) out << " K" << weight_to_string(m.mu);
    if (!m.e.empty()) out << " " << word_str("E", m.e);
  }
  return out.str();
}

Weight word_content(int rank, const Word& w) {
  Weight c(rank, 0);
  for (int i : w) ++c[i];
  return c;
}

std::vector<Word> words_of_content(const Weight& content) {
  Word start;
  for (size_t i = 0; i < content.size(); ++i)
    start.insert(start.end(), content[i], static_cast<int>(i));
  std::vector<Word> out;
  do {
    out.push_back(start);
  } while (std::next_permutation(start.begin(), start.end()));
  return out;
}

// ---------------------------------------------------------------------------
// UAlgebra

UAlgebra::UAlgebra(CartanData cartan) : cartan_(std::move(cartan)) {}

UElement UAlgebra::one() const {
  UElement r;
  r.add({{}, weight_zero(cartan_.rank()), {}}, Scalar::one());
  return r;
}

UElement UAlgebra::scalar(const Scalar& c) const { return one() * c; }

UElement UAlgebra::F(int i) const {
  UElement r;
  r.add({{i}, weight_zero(cartan_.rank()), {}}, Scalar::one());
  return r;
}

UElement UAlgebra::E(int i) const {
  UElement r;
  r.add({{}, weight_zero(cartan_.rank()), {i}}, Scalar::one());
  return r;
}

UElement UAlgebra::K(const Weight& mu) const {
  UElement r;
  r.add({{}, mu, {}}, Scalar::one());
  return r;
}

UElement UAlgebra::from_f_word(const Word& w) {
  auto nf = word_normal_form({{w, Scalar::one()}});
  UElement r;
  for (const auto& [word, c] : nf) r.add({word, weight_zero(cartan_.rank()), {}}, c);
  return r;
}

UElement UAlgebra::from_e_word(const Word& w) {
  auto nf = word_normal_form({{w, Scalar::one()}});
  UElement r;
  for (const auto& [word, c] : nf) r.add({{}, weight_zero(cartan_.rank()), word}, c);
  return r;
}

bool UAlgebra::reducible(const Word& w, size_t* pos, const Word** lead) const {
  for (size_t p = 0; p < w.size(); ++p) {
    Word sub;
    size_t maxlen = std::min(max_lead_len_, w.size() - p);
    sub.reserve(maxlen);
    for (size_t l = 1; l <= maxlen; ++l) {
      sub.push_back(w[p + l - 1]);
      if (l < 2) continue;
      auto it = rules_.find(sub);
      if (it != rules_.end()) {
        if (pos) *pos = p;
        if (lead) *lead = &it->first;
        return true;
      }
    }
  }
  return false;
}

std::map<Word, Scalar> UAlgebra::word_normal_form(std::map<Word, Scalar> elem) {
  if (!elem.empty())
    ensure_component(word_content(cartan_.rank(), elem.begin()->first));
  std::map<Word, Scalar> done;
  auto it = elem.begin();
  while (it != elem.end()) {
    size_t pos = 0;
    const Word* lead = nullptr;
    if (!reducible(it->first, &pos, &lead)) {
      if (!it->second.is_zero()) done.emplace(it->first, it->second);
      it = elem.erase(it);
      continue;
    }
    Word w = it->first;
    Scalar coef = it->second;
    it = elem.erase(it);
    const Rule& rule = rules_.at(*lead);
    for (const auto& [c, t] : rule.rhs) {
      Word nw(w.begin(), w.begin() + pos);
      nw.insert(nw.end(), t.begin(), t.end());
      nw.insert(nw.end(), w.begin() + pos + lead->size(), w.end());
      auto [jt, fresh] = elem.emplace(nw, coef * c);
      if (!fresh) {
        jt->second += coef * c;
        if (jt->second.is_zero()) elem.erase(jt);
      }
    }
    // Every replacement word is lex-greater than w, so resuming at the old
    // position keeps the scan monotone.
    it = elem.lower_bound(w);
  }
  return done;
}

namespace {
mpz_class multinomial(const Weight& content) {
  mpz_class r = 1;
  long total = 0;
  for (long c : content) {
    for (long k = 1; k <= c; ++k) {
      ++total;
      r *= total;
      r /= k;
    }
  }
  return r;
}
}  // namespace

void UAlgebra::ensure_component(const Weight& content) {
  if (components_.count(content)) return;
  long total = height(content);
  if (total < 2) {
    Component comp;
    if (total == 0) comp.standard = {{}};
    else
      for (size_t i = 0; i < content.size(); ++i)
        if (content[i] == 1) comp.standard = {{static_cast<int>(i)}};
    components_.emplace(content, std::move(comp));
    return;
  }
  mpz_class words = multinomial(content);
  if (words > word_limit_)
    throw error("UAlgebra: component " + weight_to_string(content) + " has " +
                words.get_str() + " words, exceeding the configured limit of " +
                std::to_string(word_limit_) +
                " (raise set_component_word_limit to proceed)");
  // Resolve all strictly smaller contents first so their rules are available.
  Weight sub(content.size(), 0);
  while (true) {
    // Advance odometer.
    size_t k = 0;
    while (k < sub.size() && sub[k] == content[k]) {
      sub[k] = 0;
      ++k;
    }
    if (k == sub.size()) break;
    ++sub[k];
    if (sub != content && height(sub) >= 2 && !components_.count(sub))
      ensure_component(sub);
  }
  if (words <= rref_threshold_) harvest_by_row_reduction(content);
  else certify_by_counting(content);
}

void UAlgebra::harvest_by_row_reduction(const Weight& content) {
  const int n = cartan_.rank();
  std::vector<Word> words = words_of_content(content);
  std::map<Word, int> col;
  for (size_t k = 0; k < words.size(); ++k) col[words[k]] = static_cast<int>(k);

  using Row = std::map<int, Scalar>;
  std::map<int, Row> pivots;  // pivot column -> normalized row

  auto insert_row = [&](Row row) {
    while (!row.empty()) {
      auto lead = row.begin();
      auto p = pivots.find(lead->first);
      if (p == pivots.end()) {
        Scalar inv = lead->second.inverse();
        for (auto& [c, v] : row) v *= inv;
        pivots.emplace(lead->first, std::move(row));
        return;
      }
      Scalar f = lead->second;
      for (const auto& [c, v] : p->second) {
        auto [it, fresh] = row.emplace(c, -f * v);
        if (!fresh) {
          it->second -= f * v;
          if (it->second.is_zero()) row.erase(it);
        }
      }
    }
  };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      long m = 1 - cartan_.a(i, j);
      Weight rel = weight_zero(n);
      rel[i] = m;
      rel[j] += 1;
      Weight rem = content - rel;
      if (std::any_of(rem.begin(), rem.end(), [](long x) { return x < 0; }))
        continue;
      for (const Word& t : words_of_content(rem)) {
        for (size_t s = 0; s <= t.size(); ++s) {
          Row row;
          for (long r = 0; r <= m; ++r) {
            Word w(t.begin(), t.begin() + s);
            w.insert(w.end(), r, i);
            w.push_back(j);
            w.insert(w.end(), m - r, i);
            w.insert(w.end(), t.begin() + s, t.end());
            Scalar c = quantum_binomial(m, r, cartan_.eps(i));
            if (r % 2) c = -c;
            auto [it, fresh] = row.emplace(col.at(w), c);
            if (!fresh) {
              it->second += c;
              if (it->second.is_zero()) row.erase(it);
            }
          }
          insert_row(std::move(row));
        }
      }
    }
  }

  // Back substitution in decreasing pivot order.
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    Row& row = it->second;
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto jt = std::next(row.begin()); jt != row.end(); ++jt) {
        auto p = pivots.find(jt->first);
        if (p == pivots.end() || jt->first == it->first) continue;
        Scalar f = jt->second;
        for (const auto& [c, v] : p->second) {
          auto [kt, fresh] = row.emplace(c, -f * v);
          if (!fresh) {
            kt->second -= f * v;
            if (kt->second.is_zero()) row.erase(kt);
          }
        }
        changed = true;
        break;
      }
    }
  }

  Component comp;
  for (size_t k = 0; k < words.size(); ++k)
    if (!pivots.count(static_cast<int>(k))) comp.standard.push_back(words[k]);
  long expected = kostant_partition_count(cartan_, content);
  if (static_cast<long>(comp.standard.size()) != expected)
    throw error("UAlgebra: component " + weight_to_string(content) +
                " row reduction found " + std::to_string(comp.standard.size()) +
                " standard words, expected " + std::to_string(expected));
  for (const auto& [c, row] : pivots) {
    Rule rule;
    for (auto it = std::next(row.begin()); it != row.end(); ++it)
      rule.rhs.emplace_back(-it->second, words[it->first]);
    max_lead_len_ = std::max(max_lead_len_, words[c].size());
    rules_.emplace(words[c], std::move(rule));
  }
  components_.emplace(content, std::move(comp));
}

void UAlgebra::certify_by_counting(const Weight& content) {
  Word w;
  for (size_t i = 0; i < content.size(); ++i)
    w.insert(w.end(), content[i], static_cast<int>(i));
  Component comp;
  do {
    if (!reducible(w, nullptr, nullptr)) comp.standard.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  long expected = kostant_partition_count(cartan_, content);
  if (static_cast<long>(comp.standard.size()) != expected)
    throw error("UAlgebra: component " + weight_to_string(content) +
                " is too large for row reduction and the harvested rules are "
                "incomplete there (" +
                std::to_string(comp.standard.size()) + " irreducible words vs " +
                std::to_string(expected) +
                " expected); raise set_row_reduction_threshold");
  components_.emplace(content, std::move(comp));
}

const std::vector<Word>& UAlgebra::standard_words(const Weight& content) {
  ensure_component(content);
  return components_.at(content).standard;
}

// ---------------------------------------------------------------------------
// Multiplication

namespace {
struct Tok {
  int kind;  // 0 = F, 1 = K, 2 = E
  int letter = -1;
  Weight mu;
};
}  // namespace

UElement UAlgebra::multiply(const UElement& a, const UElement& b) {
  UElement result;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      // Token sequence of the concatenated monomials.
      std::vector<Tok> toks;
      auto push_mono = [&](const UMonomial& m) {
        for (int i : m.f) toks.push_back({0, i, {}});
        if (!is_zero(m.mu)) toks.push_back({1, -1, m.mu});
        for (int i : m.e) toks.push_back({2, i, {}});
      };
      push_mono(ma);
      push_mono(mb);

      std::vector<std::pair<Scalar, std::vector<Tok>>> work;
      work.emplace_back(ca * cb, std::move(toks));
      while (!work.empty()) {
        auto [coef, seq] = std::move(work.back());
        work.pop_back();
        size_t p = 0;
        bool acted = false;
        for (; p + 1 < seq.size(); ++p) {
          const Tok& x = seq[p];
          const Tok& y = seq[p + 1];
          if (x.kind <= y.kind && !(x.kind == 1 && y.kind == 1)) continue;
          acted = true;
          if (x.kind == 1 && y.kind == 1) {  // K K -> K
            std::vector<Tok> s(seq);
            s[p].mu = x.mu + y.mu;
            s.erase(s.begin() + p + 1);
            work.emplace_back(coef, std::move(s));
          } else if (x.kind == 1 && y.kind == 0) {  // K F
            std::vector<Tok> s(seq);
            std::swap(s[p], s[p + 1]);
            long d = cartan_.pairing(x.mu, weight_alpha(cartan_.rank(), y.letter));
            work.emplace_back(coef * Scalar::v_power(-2 * d), std::move(s));
          } else if (x.kind == 2 && y.kind == 1) {  // E K
            std::vector<Tok> s(seq);
            std::swap(s[p], s[p + 1]);
            long d = cartan_.pairing(y.mu, weight_alpha(cartan_.rank(), x.letter));
            work.emplace_back(coef * Scalar::v_power(-2 * d), std::move(s));
          } else {  // E F
            std::vector<Tok> swapped(seq);
            std::swap(swapped[p], swapped[p + 1]);
            work.emplace_back(coef, std::move(swapped));
            if (x.letter == y.letter) {
              int i = x.letter;
              Scalar c = coef * (qi(i) - qi(i).inverse());
              Weight ai = weight_alpha(cartan_.rank(), i);
              std::vector<Tok> rest(seq.begin(), seq.begin() + p);
              std::vector<Tok> tail(seq.begin() + p + 2, seq.end());
              std::vector<Tok> minus(rest);
              minus.push_back({1, -1, -ai});
              minus.insert(minus.end(), tail.begin(), tail.end());
              work.emplace_back(c, std::move(minus));
              std::vector<Tok> plus(rest);
              plus.push_back({1, -1, ai});
              plus.insert(plus.end(), tail.begin(), tail.end());
              work.emplace_back(-c, std::move(plus));
            }
          }
          break;
        }
        if (acted) continue;
        // Sorted: F* K? E*.  Apply the Serre normal forms.
        Word fw, ew;
        Weight mu = weight_zero(cartan_.rank());
        for (const Tok& t : seq) {
          if (t.kind == 0) fw.push_back(t.letter);
          else if (t.kind == 2) ew.push_back(t.letter);
          else mu = mu + t.mu;
        }
        auto fnf = word_normal_form({{fw, Scalar::one()}});
        auto enf = word_normal_form({{ew, Scalar::one()}});
        for (const auto& [wf, cf] : fnf)
          for (const auto& [we, ce] : enf)
            result.add({wf, mu, we}, coef * cf * ce);
      }
    }
  }
  return result;
}

UElement UAlgebra::power(const UElement& a, long n) {
  if (n < 0) throw error("UAlgebra: negative power");
  UElement r = one();
  for (long k = 0; k < n; ++k) r = multiply(r, a);
  return r;
}

UElement UAlgebra::q_commutator(const UElement& a, const UElement& b, long c) {
  return multiply(a, b) - multiply(b, a) * Scalar::q_power(c);
}

UElement UAlgebra::rescaled_q_commutator(const UElement& a, const UElement& b,
                                         long c) {
  Scalar qm1 = Scalar::q_power(1) - Scalar::one();
  return q_commutator(a, b, c) * qm1.inverse();
}

bool UAlgebra::is_integral(const UElement& x, const IntegralityProfile& profile) {
  for (const auto& [m, c] : x.terms())
    if (!profile.is_in_A_prime(c)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// PBW

bool PBWMonomial::operator<(const PBWMonomial& o) const {
  if (f_exp != o.f_exp) return f_exp < o.f_exp;
  if (mu != o.mu) return mu < o.mu;
  return e_exp < o.e_exp;
}

namespace {
void exponent_rec(const std::vector<Weight>& roots, size_t k, Weight rem,
                  std::vector<long>& cur, std::vector<std::vector<long>>& out) {
  if (k == roots.size()) {
    if (is_zero(rem)) out.push_back(cur);
    return;
  }
  long maxm = -1;
  Weight r = rem;
  for (long m = 0;; ++m) {
    bool ok = std::all_of(r.begin(), r.end(), [](long x) { return x >= 0; });
    if (!ok) break;
    maxm = m;
    r = r - roots[k];
  }
  for (long m = 0; m <= maxm; ++m) {
    cur.push_back(m);
    exponent_rec(roots, k + 1, rem - m * roots[k], cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<std::vector<long>> exponent_vectors(const std::vector<Weight>& roots,
                                                const Weight& content) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  exponent_rec(roots, 0, content, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

PBWBasis::PBWBasis(UAlgebra& algebra, PBWData data)
    : algebra_(algebra), data_(std::move(data)) {
  if (data_.roots.size() != data_.f_root_vectors.size() ||
      data_.roots.size() != data_.e_root_vectors.size())
    throw error("PBWBasis: root vector count mismatch");
}

UElement PBWBasis::f_power_product(const std::vector<long>& exp) {
  auto it = f_cache_.find(exp);
  if (it != f_cache_.end()) return it->second;
  UElement r;
  size_t last = exp.size();
  for (size_t k = 0; k < exp.size(); ++k)
    if (exp[k] > 0) last = k;
  if (last == exp.size()) {
    r = algebra_.one();
  } else {
    std::vector<long> prev(exp);
    --prev[last];
    r = algebra_.multiply(f_power_product(prev), data_.f_root_vectors[last]);
  }
  f_cache_.emplace(exp, r);
  return r;
}

UElement PBWBasis::e_power_product(const std::vector<long>& exp) {
  auto it = e_cache_.find(exp);
  if (it != e_cache_.end()) return it->second;
  UElement r;
  size_t first = exp.size();
  for (size_t k = exp.size(); k-- > 0;)
    if (exp[k] > 0) first = k;
  if (first == exp.size()) {
    r = algebra_.one();
  } else {
    std::vector<long> prev(exp);
    --prev[first];
    r = algebra_.multiply(e_power_product(prev), data_.e_root_vectors[first]);
  }
  e_cache_.emplace(exp, r);
  return r;
}

namespace {
// Inverse of a square Scalar matrix by Gauss-Jordan elimination.
std::vector<std::vector<Scalar>> invert(std::vector<std::vector<Scalar>> m) {
  const size_t n = m.size();
  std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n, Scalar::zero()));
  for (size_t i = 0; i < n; ++i) inv[i][i] = Scalar::one();
  for (size_t col = 0; col < n; ++col) {
    size_t p = col;
    while (p < n && m[p][col].is_zero()) ++p;
    if (p == n) throw error("PBWBasis: expansion matrix is singular");
    std::swap(m[p], m[col]);
    std::swap(inv[p], inv[col]);
    Scalar s = m[col][col].inverse();
    for (size_t j = 0; j < n; ++j) {
      m[col][j] *= s;
      inv[col][j] *= s;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      Scalar f = m[r][col];
      for (size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}
}  // namespace

PBWBasis::Block PBWBasis::build_block(const Weight& content, bool e_side) {
  Block b;
  b.exps = exponent_vectors(data_.roots, content);
  b.standard = algebra_.standard_words(content);
  if (b.exps.size() != b.standard.size())
    throw error("PBWBasis: exponent/standard count mismatch at " +
                weight_to_string(content));
  const size_t n = b.exps.size();
  std::map<Word, size_t> row;
  for (size_t k = 0; k < n; ++k) row[b.standard[k]] = k;
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n, Scalar::zero()));
  for (size_t a = 0; a < n; ++a) {
    UElement x = e_side ? e_power_product(b.exps[a]) : f_power_product(b.exps[a]);
    for (const auto& [mono, c] : x.terms()) {
      const Word& w = e_side ? mono.e : mono.f;
      m[row.at(w)][a] = c;
    }
  }
  b.inverse = invert(std::move(m));
  return b;
}

const PBWBasis::Block& PBWBasis::f_block(const Weight& content) {
  auto it = f_blocks_.find(content);
  if (it == f_blocks_.end())
    it = f_blocks_.emplace(content, build_block(content, false)).first;
  return it->second;
}

const PBWBasis::Block& PBWBasis::e_block(const Weight& content) {
  auto it = e_blocks_.find(content);
  if (it == e_blocks_.end())
    it = e_blocks_.emplace(content, build_block(content, true)).first;
  return it->second;
}

UElement PBWBasis::expand(const PBWMonomial& m) {
  UElement x = algebra_.multiply(f_power_product(m.f_exp), algebra_.K(m.mu));
  return algebra_.multiply(x, e_power_product(m.e_exp));
}

std::map<PBWMonomial, Scalar> PBWBasis::coordinates(const UElement& x) {
  const int rank = algebra_.cartan().rank();
  // Group terms by (f-content, mu, e-content).
  std::map<std::tuple<Weight, Weight, Weight>,
           std::vector<std::pair<const UMonomial*, const Scalar*>>>
      groups;
  for (const auto& [m, c] : x.terms())
    groups[{word_content(rank, m.f), m.mu, word_content(rank, m.e)}]
        .emplace_back(&m, &c);
  std::map<PBWMonomial, Scalar> out;
  for (const auto& [key, terms] : groups) {
    const auto& [fc, mu, ec] = key;
    const Block& fb = f_block(fc);
    const Block& eb = e_block(ec);
    std::map<Word, size_t> frow, erow;
    for (size_t k = 0; k < fb.standard.size(); ++k) frow[fb.standard[k]] = k;
    for (size_t k = 0; k < eb.standard.size(); ++k) erow[eb.standard[k]] = k;
    for (size_t a = 0; a < fb.exps.size(); ++a) {
      for (size_t c2 = 0; c2 < eb.exps.size(); ++c2) {
        Scalar v = Scalar::zero();
        for (const auto& [mono, coef] : terms) {
          const Scalar& fi = fb.inverse[a][frow.at(mono->f)];
          if (fi.is_zero()) continue;
          const Scalar& ei = eb.inverse[c2][erow.at(mono->e)];
          if (ei.is_zero()) continue;
          v += fi * ei * (*coef);
        }
        if (!v.is_zero()) out.emplace(PBWMonomial{fb.exps[a], mu, eb.exps[c2]}, v);
      }
    }
  }
  return out;
}

}  // namespace qsp

#include "qsp/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace qsp {

Weight weight_zero(int rank) { return Weight(rank, 0); }

Weight weight_alpha(int rank, int i) {
  Weight w(rank, 0);
  w[i] = 1;
  return w;
}

Weight operator+(const Weight& a, const Weight& b) {
  Weight r(a);
  for (size_t k = 0; k < r.size(); ++k) r[k] += b[k];
  return r;
}

Weight operator-(const Weight& a, const Weight& b) {
  Weight r(a);
  for (size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
  return r;
}

Weight operator-(const Weight& a) {
  Weight r(a);
  for (auto& x : r) x = -x;
  return r;
}

Weight operator*(long c, const Weight& a) {
  Weight r(a);
  for (auto& x : r) x *= c;
  return r;
}

bool is_zero(const Weight& a) {
  return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
}

long height(const Weight& a) {
  return std::accumulate(a.begin(), a.end(), 0L);
}

std::string weight_to_string(const Weight& a) {
  std::string s = "(";
  for (size_t k = 0; k < a.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(a[k]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// CartanData

CartanData::CartanData(std::vector<std::vector<int>> a) : a_(std::move(a)) {
  const int n = static_cast<int>(a_.size());
  if (n == 0) throw error("CartanData: empty matrix");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a_[i].size()) != n)
      throw error("CartanData: matrix is not square");
    if (a_[i][i] != 2) throw error("CartanData: a_ii must equal 2");
    for (int j = 0; j < n; ++j) {
      if (i != j && a_[i][j] > 0)
        throw error("CartanData: off-diagonal entries must be <= 0");
      if (i != j && ((a_[i][j] == 0) != (a_[j][i] == 0)))
        throw error("CartanData: zero pattern must be symmetric");
    }
  }
  // Symmetrizers per connected component: eps_i a_ij = eps_j a_ji with the
  // minimal positive integer solution.
  std::vector<mpq_class> e(n, 0);
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    e[s] = 1;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      for (int j = 0; j < n; ++j) {
        if (i == j || a_[i][j] == 0) continue;
        mpq_class val = e[i] * a_[i][j] / a_[j][i];
        if (comp[j] < 0) {
          comp[j] = ncomp;
          e[j] = val;
          queue.push_back(j);
        } else if (e[j] != val) {
          throw error("CartanData: matrix is not symmetrizable");
        }
      }
    }
    ++ncomp;
  }
  // Clear denominators and divide by the gcd within each component.
  eps_.assign(n, 1);
  for (int c = 0; c < ncomp; ++c) {
    mpz_class lcm = 1;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e[i].get_den().get_mpz_t());
    mpz_class g = 0;
    std::vector<mpz_class> scaled(n);
    for (int i = 0; i < n; ++i) {
      if (comp[i] != c) continue;
      scaled[i] = mpz_class(e[i] * lcm);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled[i].get_mpz_t());
    }
    for (int i = 0; i < n; ++i) {
      if (comp[i] != c) continue;
      mpz_class v = scaled[i] / g;
      if (v <= 0 || !v.fits_slong_p())
        throw error("CartanData: bad symmetrizer");
      eps_[i] = v.get_si();
    }
  }
  // Finite type: the symmetrized matrix eps_i a_ij is positive definite.
  std::vector<std::vector<mpq_class>> s(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s[i][j] = mpq_class(eps_[i]) * a_[i][j];
  for (int k = 0; k < n; ++k) {
    // Leading principal minor via Gaussian elimination.
    std::vector<std::vector<mpq_class>> m(k + 1, std::vector<mpq_class>(k + 1));
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) m[i][j] = s[i][j];
    mpq_class det = 1;
    for (int i = 0; i <= k; ++i) {
      int p = i;
      while (p <= k && m[p][i] == 0) ++p;
      if (p > k) {
        det = 0;
        break;
      }
      if (p != i) {
        std::swap(m[p], m[i]);
        det = -det;
      }
      det *= m[i][i];
      for (int r = i + 1; r <= k; ++r) {
        mpq_class f = m[r][i] / m[i][i];
        for (int cc = i; cc <= k; ++cc) m[r][cc] -= f * m[i][cc];
      }
    }
    if (det <= 0) throw error("CartanData: matrix is not of finite type");
  }
}

CartanData CartanData::simple(char type, int n) {
  if (n < 1) throw error("CartanData: rank must be positive");
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) a[i][i + 1] = a[i + 1][i] = -1;
  };
  switch (type) {
    case 'A':
      chain(n);
      break;
    case 'B':
      if (n < 2) throw error("CartanData: B_n needs n >= 2");
      chain(n);
      a[n - 1][n - 2] = -2;  // node n short
      break;
    case 'C':
      if (n < 2) throw error("CartanData: C_n needs n >= 2");
      chain(n);
      a[n - 2][n - 1] = -2;  // node n long
      break;
    case 'D':
      if (n < 3) throw error("CartanData: D_n needs n >= 3");
      chain(n - 1);
      a[n - 3][n - 1] = a[n - 1][n - 3] = -1;
      break;
    case 'E':
      if (n < 6 || n > 8) throw error("CartanData: E_n needs 6 <= n <= 8");
      // Bourbaki: node 2 attached to node 4; chain 1-3-4-5-...-n.
      a[0][2] = a[2][0] = -1;
      a[1][3] = a[3][1] = -1;
      for (int i = 2; i + 1 < n; ++i) a[i][i + 1] = a[i + 1][i] = -1;
      break;
    case 'F':
      if (n != 4) throw error("CartanData: F requires rank 4");
      chain(4);
      a[2][1] = -2;  // nodes 1,2 long; 3,4 short
      break;
    case 'G':
      if (n != 2) throw error("CartanData: G requires rank 2");
      a[0][1] = -3;  // node 1 short
      a[1][0] = -1;
      break;
    default:
      throw error("CartanData: unknown type");
  }
  return CartanData(a);
}

CartanData CartanData::direct_sum(const CartanData& x, const CartanData& y) {
  int n = x.rank(), m = y.rank();
  std::vector<std::vector<int>> a(n + m, std::vector<int>(n + m, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = x.a(i, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[n + i][n + j] = y.a(i, j);
  return CartanData(a);
}

long CartanData::pairing(const Weight& mu, const Weight& nu) const {
  long s = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) s += eps_[i] * a_[i][j] * mu[i] * nu[j];
  return s;
}

long CartanData::coroot_pairing(int i, const Weight& mu) const {
  long s = 0;
  for (int j = 0; j < rank(); ++j) s += a_[i][j] * mu[j];
  return s;
}

Weight CartanData::reflect(int i, const Weight& mu) const {
  Weight r(mu);
  r[i] -= coroot_pairing(i, mu);
  return r;
}

Weight CartanData::act(const WeylWord& w, const Weight& mu) const {
  Weight r(mu);
  for (auto it = w.rbegin(); it != w.rend(); ++it) r = reflect(*it, r);
  return r;
}

// ---------------------------------------------------------------------------
// Roots

std::vector<Weight> positive_roots(const CartanData& cartan) {
  std::set<Weight> seen;
  std::deque<Weight> queue;
  for (int i = 0; i < cartan.rank(); ++i) {
    Weight a = weight_alpha(cartan.rank(), i);
    seen.insert(a);
    queue.push_back(a);
  }
  while (!queue.empty()) {
    Weight b = queue.front();
    queue.pop_front();
    for (int i = 0; i < cartan.rank(); ++i) {
      Weight r = cartan.reflect(i, b);
      bool positive = std::all_of(r.begin(), r.end(), [](long x) { return x >= 0; });
      if (positive && seen.insert(r).second) queue.push_back(r);
    }
  }
  std::vector<Weight> roots(seen.begin(), seen.end());
  std::sort(roots.begin(), roots.end(), [](const Weight& x, const Weight& y) {
    long hx = height(x), hy = height(y);
    if (hx != hy) return hx < hy;
    return x < y;
  });
  return roots;
}

namespace {
long kostant_rec(const std::vector<Weight>& roots, size_t k, Weight nu,
                 std::map<std::pair<size_t, Weight>, long>& memo) {
  if (is_zero(nu)) return 1;
  if (k == roots.size()) return 0;
  auto key = std::make_pair(k, nu);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  long total = 0;
  Weight rem = nu;
  while (true) {
    total += kostant_rec(roots, k + 1, rem, memo);
    bool ok = true;
    for (size_t c = 0; c < rem.size(); ++c) {
      rem[c] -= roots[k][c];
      if (rem[c] < 0) ok = false;
    }
    if (!ok) break;
  }
  memo[key] = total;
  return total;
}
}  // namespace

long kostant_partition_count(const CartanData& cartan, const Weight& nu) {
  static std::map<std::vector<std::vector<int>>, std::vector<Weight>> root_cache;
  static std::map<std::vector<std::vector<int>>,
                  std::map<std::pair<size_t, Weight>, long>>
      memo_cache;
  auto& roots = root_cache[cartan.matrix()];
  if (roots.empty()) roots = positive_roots(cartan);
  return kostant_rec(roots, 0, nu, memo_cache[cartan.matrix()]);
}

std::vector<Weight> inversion_set(const CartanData& cartan, const WeylWord& w) {
  std::vector<Weight> betas;
  for (size_t k = 0; k < w.size(); ++k) {
    WeylWord prefix(w.begin(), w.begin() + k);
    Weight b = cartan.act(prefix, weight_alpha(cartan.rank(), w[k]));
    if (std::any_of(b.begin(), b.end(), [](long x) { return x < 0; }))
      throw error("inversion_set: word is not reduced");
    betas.push_back(b);
  }
  std::set<Weight> distinct(betas.begin(), betas.end());
  if (distinct.size() != betas.size())
    throw error("inversion_set: word is not reduced");
  return betas;
}

// ---------------------------------------------------------------------------
// WeylGroup

WeylGroup::WeylGroup(const CartanData& cartan) : cartan_(cartan) {
  const int n = cartan_.rank();
  auto refl_mat = [&](int i) {
    Mat m(n * n, 0);
    for (int c = 0; c < n; ++c) {
      Weight img = cartan_.reflect(i, weight_alpha(n, c));
      for (int r = 0; r < n; ++r) m[r * n + c] = img[r];
    }
    return m;
  };
  Mat id(n * n, 0);
  for (int i = 0; i < n; ++i) id[i * n + i] = 1;
  mats_.push_back(id);
  words_.push_back({});
  index_[id] = 0;
  std::vector<Mat> gen(n);
  simple_.resize(n);
  for (int i = 0; i < n; ++i) gen[i] = refl_mat(i);
  // Breadth-first search; children are generated in increasing letter order,
  // so the stored word is the lexicographically smallest reduced word.
  for (size_t head = 0; head < mats_.size(); ++head) {
    Mat cur = mats_[head];  // copy: mats_ may reallocate
    WeylWord word = words_[head];
    for (int i = 0; i < n; ++i) {
      Mat next = mat_multiply(cur, gen[i]);
      if (index_.find(next) == index_.end()) {
        index_[next] = static_cast<int>(mats_.size());
        mats_.push_back(next);
        WeylWord nw = word;
        nw.push_back(i);
        words_.push_back(nw);
      }
    }
  }
  for (int i = 0; i < n; ++i) simple_[i] = index_.at(gen[i]);
}

WeylGroup::Mat WeylGroup::mat_multiply(const Mat& x, const Mat& y) const {
  const int n = cartan_.rank();
  Mat r(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      long v = x[i * n + k];
      if (v == 0) continue;
      for (int j = 0; j < n; ++j) r[i * n + j] += v * y[k * n + j];
    }
  return r;
}

int WeylGroup::multiply(int x, int y) const {
  return index_.at(mat_multiply(mats_[x], mats_[y]));
}

int WeylGroup::inverse(int x) const {
  // Elements have small order; walk the cyclic group generated by x.
  int prev = identity();
  int cur = x;
  while (cur != identity()) {
    prev = cur;
    cur = multiply(cur, x);
  }
  return prev;
}

int WeylGroup::from_word(const WeylWord& w) const {
  int e = identity();
  for (int letter : w) e = multiply(e, simple_[letter]);
  return e;
}

bool WeylGroup::is_reduced(const WeylWord& w) const {
  return length(from_word(w)) == static_cast<int>(w.size());
}

Weight WeylGroup::act(int x, const Weight& mu) const {
  const int n = cartan_.rank();
  Weight r(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i] += mats_[x][i * n + j] * mu[j];
  return r;
}

int WeylGroup::order_of(int x) const {
  int e = x;
  int ord = 1;
  while (e != identity()) {
    e = multiply(e, x);
    ++ord;
    if (ord > 2 * size()) throw error("WeylGroup: order overflow");
  }
  return ord;
}

int WeylGroup::longest_in_parabolic(const std::vector<int>& subset) const {
  int best = identity();
  // BFS over the parabolic subgroup.
  std::set<int> seen{identity()};
  std::deque<int> queue{identity()};
  while (!queue.empty()) {
    int e = queue.front();
    queue.pop_front();
    if (length(e) > length(best)) best = e;
    for (int i : subset) {
      int nx = multiply(e, simple_[i]);
      if (seen.insert(nx).second) queue.push_back(nx);
    }
  }
  return best;
}

WeylWord longest_word(const CartanData& cartan, const std::vector<int>& subset) {
  for (int i : subset)
    if (i < 0 || i >= cartan.rank()) throw error("longest_word: bad subset");
  WeylGroup w(cartan);
  return w.canonical_word(w.longest_in_parabolic(subset));
}

int braid_order(const CartanData& cartan, const WeylWord& u, const WeylWord& v) {
  WeylGroup w(cartan);
  return w.order_of(w.multiply(w.from_word(u), w.from_word(v)));
}

std::string rank1_type_name(Rank1Type t) {
  switch (t) {
    case Rank1Type::AI1: return "AI1";
    case Rank1Type::AII3: return "AII3";
    case Rank1Type::AIII11: return "AIII11";
    case Rank1Type::AIVn: return "AIVn";
    case Rank1Type::BII: return "BII";
    case Rank1Type::CII: return "CII";
    case Rank1Type::DII: return "DII";
    case Rank1Type::FII: return "FII";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// SatakeDiagram

SatakeDiagram::SatakeDiagram(std::string name, CartanData cartan,
                             std::vector<bool> black, std::vector<int> tau,
                             const std::map<int, int>& c_overrides,
                             const std::vector<int>& reps_override)
    : name_(std::move(name)),
      cartan_(std::move(cartan)),
      black_(std::move(black)),
      tau_(std::move(tau)) {
  const int n = cartan_.rank();
  if (static_cast<int>(black_.size()) != n || static_cast<int>(tau_.size()) != n)
    throw error("SatakeDiagram: size mismatch");
  for (int i = 0; i < n; ++i) {
    if (tau_[i] < 0 || tau_[i] >= n || tau_[tau_[i]] != i)
      throw error("SatakeDiagram: tau is not an involution");
    if (black_[i] != black_[tau_[i]])
      throw error("SatakeDiagram: tau must preserve the black/white partition");
    (black_[i] ? black_list_ : white_list_).push_back(i);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cartan_.a(i, j) != cartan_.a(tau_[i], tau_[j]))
        throw error("SatakeDiagram: tau is not a diagram automorphism");
  weyl_ = std::make_shared<WeylGroup>(cartan_);
  w_black_elt_ = weyl_->longest_in_parabolic(black_list_);
  w_black_word_ = weyl_->canonical_word(w_black_elt_);
  validate(c_overrides);
  if (reps_override.empty()) {
    for (int i : white_list_)
      if (i <= tau_[i]) reps_.push_back(i);
  } else {
    std::set<int> covered;
    for (int r : reps_override) {
      if (r < 0 || r >= n || black_[r]) throw error("SatakeDiagram: bad representative");
      if (covered.count(r))
        throw error("SatakeDiagram: duplicate representative orbit");
      covered.insert(r);
      covered.insert(tau_[r]);
      reps_.push_back(r);
    }
    for (int i : white_list_)
      if (!covered.count(i)) throw error("SatakeDiagram: representatives do not cover I_o");
    std::sort(reps_.begin(), reps_.end());
  }
  build_relative();
  build_y_iota();
}

long SatakeDiagram::two_rho_black_check(const Weight& mu) const {
  // <2 rho_.^vee, mu> = sum over beta in R_.^+ of 2(beta, mu)/(beta, beta).
  long total = 0;
  if (black_list_.empty()) return 0;
  std::vector<std::vector<int>> sub(black_list_.size(),
                                    std::vector<int>(black_list_.size()));
  for (size_t i = 0; i < black_list_.size(); ++i)
    for (size_t j = 0; j < black_list_.size(); ++j)
      sub[i][j] = cartan_.a(black_list_[i], black_list_[j]);
  for (const Weight& b : positive_roots(CartanData(sub))) {
    Weight amb = weight_zero(cartan_.rank());
    for (size_t i = 0; i < black_list_.size(); ++i) amb[black_list_[i]] = b[i];
    long num = 2 * cartan_.pairing(amb, mu);
    long den = cartan_.pairing(amb, amb);
    if (num % den != 0) throw error("SatakeDiagram: non-integral coroot pairing");
    total += num / den;
  }
  return total;
}

Weight SatakeDiagram::theta(const Weight& mu) const {
  Weight t(cartan_.rank(), 0);
  for (int j = 0; j < cartan_.rank(); ++j) t[tau_[j]] += mu[j];
  return -weyl_->act(w_black_elt_, t);
}

void SatakeDiagram::validate(const std::map<int, int>& c_overrides) {
  const int n = cartan_.rank();
  // Condition (3): w_.(alpha_j) = -alpha_{tau j} for black j.
  for (int j : black_list_) {
    Weight img = weyl_->act(w_black_elt_, weight_alpha(n, j));
    if (img != -weight_alpha(n, tau_[j]))
      throw error("SatakeDiagram: condition w_.(alpha_j) = -alpha_{tau j} fails");
  }
  // Condition (4): <rho_.^vee, alpha_j> integral for white tau-fixed j.
  for (int j : white_list_) {
    if (tau_[j] == j && two_rho_black_check(weight_alpha(n, j)) % 2 != 0)
      throw error("SatakeDiagram: condition <rho_.^vee, alpha_j> in Z fails");
  }
  // Sign parameters.
  c_.assign(n, 0);
  for (int i : white_list_) {
    Weight wai = weyl_->act(w_black_elt_, weight_alpha(n, i));
    if (tau_[i] == i || wai == weight_alpha(n, i)) {
      c_[i] = -1;
    }
  }
  for (int i : white_list_) {
    if (c_[i] != 0) continue;
    int t = tau_[i];
    if (i < t || c_[t] == 0) {
      c_[i] = -1;
      long sgn = two_rho_black_check(weight_alpha(n, i));
      c_[t] = (sgn % 2 == 0) ? c_[i] : -c_[i];
    }
  }
  for (const auto& [node, value] : c_overrides) {
    if (node < 0 || node >= n || black_[node])
      throw error("SatakeDiagram: c override on a non-white node");
    if (value != 1 && value != -1) throw error("SatakeDiagram: c must be +-1");
    c_[node] = value;
  }
  for (int i : white_list_) {
    long sgn = two_rho_black_check(weight_alpha(n, i));
    int expected = (sgn % 2 == 0) ? 1 : -1;
    if (c_[i] * c_[tau_[i]] != expected)
      throw error("SatakeDiagram: c_i c_{tau i} constraint violated");
    if (cartan_.coroot_pairing(i, theta(weight_alpha(n, i))) == 0 &&
        c_[i] != c_[tau_[i]])
      throw error("SatakeDiagram: c_i = c_{tau i} constraint violated");
  }
}

int SatakeDiagram::rep_of(int i) const {
  if (black_[i]) throw error("SatakeDiagram: rep_of on black node");
  for (int r : reps_)
    if (r == i || r == tau_[i]) return r;
  throw error("SatakeDiagram: representative not found");
}

Rank1Local SatakeDiagram::classify_rank1(int rep) const {
  const int i = rep;
  const int ti = tau_[i];
  // Connected components of I_{.,i} = I_. union {i, tau i} meeting {i, tau i}.
  std::set<int> J(black_list_.begin(), black_list_.end());
  J.insert(i);
  J.insert(ti);
  auto component = [&](int start) {
    std::set<int> comp{start};
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int y : J)
        if (y != x && cartan_.a(x, y) != 0 && comp.insert(y).second)
          queue.push_back(y);
    }
    return comp;
  };
  std::set<int> ci = component(i);
  auto degree = [&](int x, const std::set<int>& comp) {
    int d = 0;
    for (int y : comp)
      if (y != x && cartan_.a(x, y) != 0) ++d;
    return d;
  };
  auto chain_from = [&](int start, const std::set<int>& comp) {
    std::vector<int> order{start};
    std::set<int> used{start};
    while (order.size() < comp.size()) {
      int cur = order.back();
      int next = -1;
      for (int y : comp)
        if (!used.count(y) && cartan_.a(cur, y) != 0) {
          if (next != -1) throw error("SatakeDiagram: unexpected branch in local diagram");
          next = y;
        }
      if (next == -1) throw error("SatakeDiagram: disconnected local chain");
      order.push_back(next);
      used.insert(next);
    }
    return order;
  };
  if (ti == i) {
    if (ci.size() == 1) return {Rank1Type::AI1, {i}};
    int deg_i = degree(i, ci);
    if (deg_i == 2 && ci.size() == 3) {
      // AII3: white in the middle of an A3 chain of black nodes.
      std::vector<int> nbrs;
      for (int y : ci)
        if (y != i) nbrs.push_back(y);
      std::sort(nbrs.begin(), nbrs.end());
      bool simple_edges = cartan_.a(i, nbrs[0]) == -1 && cartan_.a(nbrs[0], i) == -1 &&
                          cartan_.a(i, nbrs[1]) == -1 && cartan_.a(nbrs[1], i) == -1;
      if (simple_edges && degree(nbrs[0], ci) == 1 && degree(nbrs[1], ci) == 1)
        return {Rank1Type::AII3, {nbrs[0], i, nbrs[1]}};
    }
    // Branch node present: DII.
    int branch = -1;
    for (int y : ci)
      if (degree(y, ci) == 3) branch = y;
    if (branch >= 0) {
      if (deg_i != 1) throw error("SatakeDiagram: unrecognized local diagram");
      // Order: tail from the white node to the branch node, then the two
      // fork leaves (smaller index first).
      std::vector<int> order{i};
      std::set<int> used{i};
      int cur = i;
      while (cur != branch) {
        int next = -1;
        for (int y : ci)
          if (!used.count(y) && cartan_.a(cur, y) != 0)
            if (next == -1 || y < next) next = y;
        if (next == -1) throw error("SatakeDiagram: bad DII tail");
        order.push_back(next);
        used.insert(next);
        cur = next;
      }
      std::vector<int> leaves;
      for (int y : ci)
        if (!used.count(y)) leaves.push_back(y);
      if (leaves.size() != 2) throw error("SatakeDiagram: bad DII fork");
      std::sort(leaves.begin(), leaves.end());
      order.push_back(leaves[0]);
      order.push_back(leaves[1]);
      return {Rank1Type::DII, order};
    }
    if (deg_i == 1) {
      // Chain with the white node at one end: BII or FII.
      std::vector<int> order = chain_from(i, ci);
      const int m = static_cast<int>(order.size());
      bool bii = m >= 2;
      for (int k = 0; k < m && bii; ++k)
        bii = cartan_.eps(order[k]) == (k + 1 < m ? 2 : 1);
      if (bii) return {Rank1Type::BII, order};
      if (m == 4) {
        // FII: standard labels run long-long-short-short with white at 4.
        std::vector<int> rev(order.rbegin(), order.rend());
        bool fii = cartan_.eps(rev[0]) == 2 && cartan_.eps(rev[1]) == 2 &&
                   cartan_.eps(rev[2]) == 1 && cartan_.eps(rev[3]) == 1;
        if (fii) return {Rank1Type::FII, rev};
      }
      throw error("SatakeDiagram: unrecognized local diagram (white end)");
    }
    if (deg_i == 2) {
      // CII: the white node has a black leaf neighbour (local node 1).
      int leaf = -1, other = -1;
      for (int y : ci)
        if (y != i && cartan_.a(i, y) != 0)
          (degree(y, ci) == 1 && cartan_.eps(y) == 1 ? leaf : other) = y;
      if (leaf == -1 || other == -1)
        throw error("SatakeDiagram: unrecognized local diagram (white interior)");
      std::set<int> rest(ci);
      rest.erase(leaf);
      std::vector<int> order = chain_from(i, rest);
      order.insert(order.begin(), leaf);
      const int m = static_cast<int>(order.size());
      bool cii = m >= 3;
      for (int k = 0; k < m && cii; ++k)
        cii = cartan_.eps(order[k]) == (k + 1 < m ? 1 : 2);
      if (cii) return {Rank1Type::CII, order};
      throw error("SatakeDiagram: unrecognized local diagram (CII shape)");
    }
    throw error("SatakeDiagram: unrecognized local diagram");
  }
  // ti != i.
  if (!ci.count(ti)) {
    if (ci.size() == 1 && component(ti).size() == 1)
      return {Rank1Type::AIII11, {i, ti}};
    throw error("SatakeDiagram: unrecognized split local pair");
  }
  // AIV_n: a chain from i to tau i, all interior nodes black.
  std::vector<int> order = chain_from(i, ci);
  if (order.back() != ti) throw error("SatakeDiagram: AIV chain must end at tau i");
  for (size_t k = 0; k + 1 < order.size(); ++k)
    if (cartan_.a(order[k], order[k + 1]) != -1 || cartan_.a(order[k + 1], order[k]) != -1)
      throw error("SatakeDiagram: AIV chain must be simply laced");
  return {Rank1Type::AIVn, order};
}

namespace {
// The standard reduced word of bs_i for each rank-1 type, in local labels.
WeylWord table2_bs_word(const Rank1Local& local) {
  const int n = static_cast<int>(local.nodes.size());
  WeylWord w;
  auto up = [&](int a, int b) { for (int k = a; k <= b; ++k) w.push_back(k); };
  auto down = [&](int a, int b) { for (int k = a; k >= b; --k) w.push_back(k); };
  switch (local.type) {
    case Rank1Type::AI1:
      w = {0};
      break;
    case Rank1Type::AII3:
      w = {1, 0, 2, 1};
      break;
    case Rank1Type::AIII11:
      w = {0, 1};
      break;
    case Rank1Type::AIVn:
    case Rank1Type::BII:
      up(0, n - 1);
      down(n - 2, 0);
      break;
    case Rank1Type::CII:
      up(1, n - 1);
      down(n - 2, 1);
      w.push_back(0);
      up(1, n - 1);
      down(n - 2, 1);
      break;
    case Rank1Type::DII:
      up(0, n - 3);
      w.push_back(n - 2);
      w.push_back(n - 1);
      down(n - 3, 0);
      break;
    case Rank1Type::FII:
      w = {3, 2, 1, 2, 0, 1, 2, 3, 2, 1, 2, 0, 1, 2, 3};
      break;
  }
  return w;
}
}  // namespace

void SatakeDiagram::build_relative() {
  const int n = cartan_.rank();
  for (int r : reps_) {
    RelativeData rd;
    std::vector<int> J(black_list_);
    J.push_back(r);
    if (tau_[r] != r) J.push_back(tau_[r]);
    int wbi = weyl_->longest_in_parabolic(J);
    rd.wbi_word = weyl_->canonical_word(wbi);
    int bs = weyl_->multiply(wbi, w_black_elt_);  // w_., and w_.^{-1} = w_.
    // Length additivity l(bs_i w_.) = l(bs_i) + l(w_.).
    if (weyl_->length(wbi) !=
        weyl_->length(bs) + static_cast<int>(w_black_word_.size()))
      throw error("SatakeDiagram: bs_i length additivity fails");
    rd.tau_i.resize(n);
    rd.tautau_i.resize(n);
    std::set<int> Jset(J.begin(), J.end());
    for (int j = 0; j < n; ++j) {
      if (!Jset.count(j)) {
        rd.tau_i[j] = j;
      } else {
        Weight img = -weyl_->act(wbi, weight_alpha(n, j));
        int target = -1;
        for (int k = 0; k < n; ++k)
          if (img == weight_alpha(n, k)) target = k;
        if (target < 0) throw error("SatakeDiagram: tau_i is not defined");
        rd.tau_i[j] = target;
      }
      rd.tautau_i[j] = tau_[rd.tau_i[j]];
    }
    // bs_i(alpha_j) = alpha_{tau tau_i j} must be simple for black j.
    for (int j : black_list_) {
      if (weyl_->act(bs, weight_alpha(n, j)) != weight_alpha(n, rd.tautau_i[j]))
        throw error("SatakeDiagram: bs_i(alpha_j) is not alpha_{tau tau_i j}");
    }
    rd.local = classify_rank1(r);
    // The stored bs_i word is the standard rank-1 reduced word (the rank-1
    // root-vector catalog is aligned with its inversion order); it is
    // cross-checked against bs_i as a group element.
    WeylWord tw;
    for (int letter : table2_bs_word(rd.local)) tw.push_back(rd.local.nodes[letter]);
    if (weyl_->from_word(tw) != bs || !weyl_->is_reduced(tw))
      throw error("SatakeDiagram: standard rank-1 word does not match bs_i for " +
                  rank1_type_name(rd.local.type));
    rd.bs_word = tw;
    relative_[r] = rd;
    if (tau_[r] != r) relative_[tau_[r]] = rd;  // bs_i = bs_{tau i}
  }
  // Reduced word for w_0^o in the bs-letters, by greedy right-peeling.
  int w0 = weyl_->longest_in_parabolic([&] {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    return all;
  }());
  int w = weyl_->multiply(w0, w_black_elt_);
  std::vector<int> letters;
  while (w != weyl_->identity()) {
    bool progressed = false;
    for (int r : reps_) {
      int bs = weyl_->from_word(relative_.at(r).bs_word);
      int nx = weyl_->multiply(w, bs);
      if (weyl_->length(nx) ==
          weyl_->length(w) - static_cast<int>(relative_.at(r).bs_word.size())) {
        letters.push_back(r);
        w = nx;
        progressed = true;
        break;
      }
    }
    if (!progressed) throw error("SatakeDiagram: cannot factor w_0^o over bs letters");
  }
  std::reverse(letters.begin(), letters.end());
  w0_circ_ = letters;
  // Compatible reduced word for w_0: bs-blocks then w_..
  block_offsets_.clear();
  w0_word_.clear();
  for (int r : w0_circ_) {
    block_offsets_.push_back(static_cast<int>(w0_word_.size()));
    const WeylWord& bw = relative_.at(r).bs_word;
    w0_word_.insert(w0_word_.end(), bw.begin(), bw.end());
  }
  block_offsets_.push_back(static_cast<int>(w0_word_.size()));
  w0_word_.insert(w0_word_.end(), w_black_word_.begin(), w_black_word_.end());
  if (weyl_->from_word(w0_word_) != w0 || !weyl_->is_reduced(w0_word_))
    throw error("SatakeDiagram: compatible w_0 word is not reduced");
}

const RelativeData& SatakeDiagram::relative(int rep) const {
  auto it = relative_.find(rep);
  if (it == relative_.end()) throw error("SatakeDiagram: no relative data for node");
  return it->second;
}

Weight SatakeDiagram::bs_act(int rep, const Weight& mu) const {
  return cartan_.act(relative(rep).bs_word, mu);
}

int SatakeDiagram::relative_braid_order(int i, int j) const {
  int bi = weyl_->from_word(relative(i).bs_word);
  int bj = weyl_->from_word(relative(j).bs_word);
  return weyl_->order_of(weyl_->multiply(bi, bj));
}

void SatakeDiagram::build_y_iota() {
  const int n = cartan_.rank();
  // Integer kernel of (Theta - I) via unimodular column operations.
  std::vector<std::vector<long>> m(n, std::vector<long>(n));
  for (int j = 0; j < n; ++j) {
    Weight img = theta(weight_alpha(n, j));
    for (int i = 0; i < n; ++i) m[i][j] = img[i] - (i == j ? 1 : 0);
  }
  std::vector<std::vector<long>> u(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;
  std::vector<bool> used(n, false);
  for (int row = 0; row < n; ++row) {
    // Euclidean elimination across unused columns.
    while (true) {
      int jmin = -1;
      for (int j = 0; j < n; ++j)
        if (!used[j] && m[row][j] != 0 &&
            (jmin == -1 || std::abs(m[row][j]) < std::abs(m[row][jmin])))
          jmin = j;
      if (jmin == -1) break;
      bool done = true;
      for (int j = 0; j < n; ++j) {
        if (j == jmin || used[j] || m[row][j] == 0) continue;
        long f = m[row][j] / m[row][jmin];
        for (int i = 0; i < n; ++i) {
          m[i][j] -= f * m[i][jmin];
          u[i][j] -= f * u[i][jmin];
        }
        if (m[row][j] != 0) done = false;
      }
      if (done) {
        used[jmin] = true;
        break;
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    bool zero = true;
    for (int i = 0; i < n; ++i) zero = zero && m[i][j] == 0;
    if (!zero) continue;
    Weight b(n);
    for (int i = 0; i < n; ++i) b[i] = u[i][j];
    // Normalize sign: first nonzero coordinate positive.
    for (int i = 0; i < n; ++i) {
      if (b[i] == 0) continue;
      if (b[i] < 0) b = -b;
      break;
    }
    if (!is_zero(b)) y_basis_.push_back(b);
  }
  std::sort(y_basis_.begin(), y_basis_.end());
  for (const Weight& b : y_basis_)
    if (theta(b) != b) throw error("SatakeDiagram: Y^i basis is not theta-fixed");
  // The splitting ZI = Y^i + span(alpha_r : r in reps) used by pi^0.
  if (y_basis_.size() + reps_.size() != static_cast<size_t>(n))
    throw error("SatakeDiagram: Y^i splitting has wrong rank");
  std::vector<std::vector<mpq_class>> b(n, std::vector<mpq_class>(2 * n, 0));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i)
      b[i][j] = (j < static_cast<int>(y_basis_.size()))
                    ? y_basis_[j][i]
                    : mpq_class(reps_[j - y_basis_.size()] == i ? 1 : 0);
    b[j][n + j] = 1;
  }
  // Invert by Gauss-Jordan.
  for (int col = 0; col < n; ++col) {
    int p = col;
    while (p < n && b[p][col] == 0) ++p;
    if (p == n) throw error("SatakeDiagram: Y^i splitting is degenerate");
    std::swap(b[p], b[col]);
    mpq_class inv = 1 / b[col][col];
    for (int j = 0; j < 2 * n; ++j) b[col][j] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || b[r][col] == 0) continue;
      mpq_class f = b[r][col];
      for (int j = 0; j < 2 * n; ++j) b[r][j] -= f * b[col][j];
    }
  }
  split_inverse_.assign(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) split_inverse_[i][j] = b[i][n + j];
}

bool SatakeDiagram::decompose_torus_weight(const Weight& mu, Weight* mu_iota) const {
  const int n = cartan_.rank();
  std::vector<mpq_class> x(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x[i] += split_inverse_[i][j] * mu[j];
  for (int i = 0; i < n; ++i)
    if (x[i].get_den() != 1) return false;
  if (mu_iota) {
    *mu_iota = weight_zero(n);
    for (size_t k = 0; k < y_basis_.size(); ++k)
      *mu_iota = *mu_iota + x[k].get_num().get_si() * y_basis_[k];
  }
  return true;
}

std::vector<long> SatakeDiagram::y_iota_coordinates(const Weight& mu) const {
  const int n = cartan_.rank();
  std::vector<mpq_class> x(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x[i] += split_inverse_[i][j] * mu[j];
  std::vector<long> coords;
  for (size_t k = 0; k < y_basis_.size(); ++k) {
    if (x[k].get_den() != 1) throw error("SatakeDiagram: weight not in Y^i");
    coords.push_back(x[k].get_num().get_si());
  }
  for (size_t k = y_basis_.size(); k < static_cast<size_t>(n); ++k)
    if (x[k] != 0) throw error("SatakeDiagram: weight not in Y^i");
  return coords;
}

bool SatakeDiagram::in_y_iota(const Weight& mu) const {
  return theta(mu) == mu;
}

IntegralityProfile SatakeDiagram::profile() const {
  bool gaussian = false;
  for (int r : reps_) {
    const Rank1Local& loc = relative(r).local;
    if (loc.type == Rank1Type::AIVn && loc.nodes.size() % 2 == 1) gaussian = true;
  }
  return IntegralityProfile(cartan_.eps(), gaussian);
}

}  // namespace qsp

// Finite-type Cartan / root / Weyl combinatorics and Satake diagram
// bookkeeping: positive roots, canonical reduced words, parabolic longest
// elements, the relative Weyl group data (bs_i, tau_i), the theta-fixed
// lattice Y^i, and the classification of rank-1 local Satake diagrams.
#ifndef QSP_ROOTDATA_HPP
#define QSP_ROOTDATA_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qsp/scalar.hpp"

namespace qsp {

// An element of the root lattice ZI in simple-root coordinates.
using Weight = std::vector<long>;
// A word in simple reflections (0-based node indices).
using WeylWord = std::vector<int>;

Weight weight_zero(int rank);
Weight weight_alpha(int rank, int i);
Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight operator-(const Weight& a);
Weight operator*(long c, const Weight& a);
bool is_zero(const Weight& a);
long height(const Weight& a);
std::string weight_to_string(const Weight& a);

// Cartan matrix with its coprime positive symmetrizers eps_i.
class CartanData {
 public:
  // Validates: a_ii = 2, a_ij <= 0, symmetrizability, finite type.
  explicit CartanData(std::vector<std::vector<int>> a);

  // Standard simple types with Bourbaki numbering.  For B_n the short root
  // sits at node n (eps = (2,..,2,1)); for C_n the long root sits at node n
  // (eps = (1,..,1,2)); G_2 has eps = (1,3); F_4 has eps = (2,2,1,1).
  static CartanData simple(char type, int n);
  static CartanData direct_sum(const CartanData& x, const CartanData& y);

  int rank() const { return static_cast<int>(a_.size()); }
  int a(int i, int j) const { return a_[i][j]; }
  const std::vector<std::vector<int>>& matrix() const { return a_; }
  long eps(int i) const { return eps_[i]; }
  const std::vector<long>& eps() const { return eps_; }

  // Symmetric bilinear form (mu, nu) with (alpha_i, alpha_j) = eps_i a_ij.
  long pairing(const Weight& mu, const Weight& nu) const;
  // <h_i, mu> = sum_j a_ij mu_j (coroot pairing).
  long coroot_pairing(int i, const Weight& mu) const;
  // s_i(mu) = mu - <h_i, mu> alpha_i.
  Weight reflect(int i, const Weight& mu) const;
  // Applies the rightmost letter first, so act(w, mu) = s_{w[0]}(...(mu)).
  Weight act(const WeylWord& w, const Weight& mu) const;

  bool operator==(const CartanData& o) const { return a_ == o.a_; }

 private:
  std::vector<std::vector<int>> a_;
  std::vector<long> eps_;
};

// All positive roots, sorted by (height, coordinates); deterministic.
std::vector<Weight> positive_roots(const CartanData& cartan);

// Kostant partition count: the number of ways to write nu as a sum of
// positive roots (with multiplicity).
long kostant_partition_count(const CartanData& cartan, const Weight& nu);

// beta_k = s_{i_1}...s_{i_{k-1}}(alpha_{i_k}) in word order; throws if the
// word is not reduced.
std::vector<Weight> inversion_set(const CartanData& cartan, const WeylWord& w);

// The full Weyl group, stored as matrices acting on root coordinates with
// canonical reduced words found by breadth-first search (lexicographically
// smallest among the shortest).
class WeylGroup {
 public:
  explicit WeylGroup(const CartanData& cartan);

  const CartanData& cartan() const { return cartan_; }
  int size() const { return static_cast<int>(words_.size()); }
  int identity() const { return 0; }
  int simple(int i) const { return simple_[i]; }
  int multiply(int x, int y) const;  // element of (word x) then (word y): x*y
  int inverse(int x) const;
  int from_word(const WeylWord& w) const;
  const WeylWord& canonical_word(int x) const { return words_[x]; }
  int length(int x) const { return static_cast<int>(words_[x].size()); }
  bool is_reduced(const WeylWord& w) const;
  Weight act(int x, const Weight& mu) const;
  int order_of(int x) const;
  // Longest element of the parabolic subgroup generated by `subset`.
  int longest_in_parabolic(const std::vector<int>& subset) const;

 private:
  using Mat = std::vector<long>;  // n*n row-major, action on root coordinates
  Mat mat_multiply(const Mat& x, const Mat& y) const;
  CartanData cartan_;
  std::vector<Mat> mats_;
  std::vector<WeylWord> words_;
  std::vector<int> simple_;
  std::map<Mat, int> index_;
};

// Canonical reduced word of the longest element of the parabolic subgroup.
WeylWord longest_word(const CartanData& cartan, const std::vector<int>& subset);

// Order of the product uv in W.
int braid_order(const CartanData& cartan, const WeylWord& u, const WeylWord& v);

// Rank-1 local Satake diagram types.
enum class Rank1Type { AI1, AII3, AIII11, AIVn, BII, CII, DII, FII };
std::string rank1_type_name(Rank1Type t);

struct Rank1Local {
  Rank1Type type;
  // Global node indices in the standard local labelling (nodes[k] is the
  // global index of local node k+1).
  std::vector<int> nodes;
};

// Relative data attached to a white orbit representative i.
struct RelativeData {
  WeylWord bs_word;    // canonical reduced word of bs_i = w_{.,i} w_.^{-1}
  WeylWord wbi_word;   // canonical reduced word of w_{.,i}
  std::vector<int> tau_i;     // involution of I with w_{.,i}(alpha_j) = -alpha_{tau_i j}
                              // on I_{.,i}; identity elsewhere
  std::vector<int> tautau_i;  // tau o tau_i
  Rank1Local local;           // rank-1 classification of the local diagram
};

// A validated Satake diagram together with all derived combinatorial data.
class SatakeDiagram {
 public:
  // tau: involution of node indices; c_overrides: optional values of c_i on
  // white nodes (+1/-1); reps_override: optional choice of I_{o,tau}.
  SatakeDiagram(std::string name, CartanData cartan, std::vector<bool> black,
                std::vector<int> tau,
                const std::map<int, int>& c_overrides = {},
                const std::vector<int>& reps_override = {});

  const std::string& name() const { return name_; }
  const CartanData& cartan() const { return cartan_; }
  int rank() const { return cartan_.rank(); }
  bool is_black(int i) const { return black_[i]; }
  bool is_white(int i) const { return !black_[i]; }
  int tau(int i) const { return tau_[i]; }
  int c_sign(int i) const { return c_[i]; }  // 0 on black nodes
  const std::vector<int>& black_nodes() const { return black_list_; }
  const std::vector<int>& white_nodes() const { return white_list_; }
  // Chosen representatives I_{o,tau} of the white tau-orbits.
  const std::vector<int>& reps() const { return reps_; }
  int rep_of(int i) const;  // representative of the orbit of white i

  const WeylGroup& weyl() const { return *weyl_; }
  const WeylWord& w_black_word() const { return w_black_word_; }
  // theta = -w_. o tau on the root lattice.
  Weight theta(const Weight& mu) const;
  // <2 rho_.^vee, mu>.
  long two_rho_black_check(const Weight& mu) const;

  const RelativeData& relative(int rep) const;
  // bs_i acting on a weight.
  Weight bs_act(int rep, const Weight& mu) const;
  // Order of bs_i bs_j in W.
  int relative_braid_order(int i, int j) const;
  // Reduced word for w_0^o = w_0 w_.^{-1} in the letters of reps().
  const std::vector<int>& w0_circ_bs_word() const { return w0_circ_; }
  // Reduced word for w_0 starting with the concatenated bs-blocks and ending
  // with w_.; block boundaries available via w0_block_offsets.
  const WeylWord& w0_word() const { return w0_word_; }
  // Offsets into the inversion set of w0_word(): offset k is the first root
  // of bs-block k; the final entry marks the start of R_.^+.
  const std::vector<int>& w0_block_offsets() const { return block_offsets_; }

  // Z-basis of Y^i = { mu : theta(mu) = mu }.
  const std::vector<Weight>& y_iota_basis() const { return y_basis_; }
  // Decompose mu = mu_iota + sum b_r alpha_r over Z with mu_iota in Y^i and
  // r running over reps(); returns false if mu is not in the direct sum.
  bool decompose_torus_weight(const Weight& mu, Weight* mu_iota) const;
  // Coordinates of mu in the y_iota_basis; throws if mu is not in Y^i.
  std::vector<long> y_iota_coordinates(const Weight& mu) const;
  bool in_y_iota(const Weight& mu) const;

  // Integrality profile of the diagram: localized factors from the eps_i and
  // Z[i] constants iff the diagram contains an odd AIV_n local subdiagram.
  IntegralityProfile profile() const;

 private:
  void validate(const std::map<int, int>& c_overrides);
  void build_relative();
  void build_y_iota();
  Rank1Local classify_rank1(int rep) const;

  std::string name_;
  CartanData cartan_;
  std::vector<bool> black_;
  std::vector<int> tau_;
  std::vector<int> c_;
  std::vector<int> black_list_;
  std::vector<int> white_list_;
  std::vector<int> reps_;
  std::shared_ptr<WeylGroup> weyl_;
  WeylWord w_black_word_;
  int w_black_elt_ = 0;
  std::map<int, RelativeData> relative_;
  std::vector<int> w0_circ_;
  WeylWord w0_word_;
  std::vector<int> block_offsets_;
  std::vector<Weight> y_basis_;
  std::vector<std::vector<mpq_class>> split_inverse_;  // for decompose
};

// Named presets and the structured
// text (JSON) configuration format.
std::vector<std::string> preset_names();
SatakeDiagram preset_diagram(const std::string& name);
SatakeDiagram diagram_from_json_text(const std::string& text);
SatakeDiagram diagram_from_file(const std::string& path);

}  // namespace qsp

#endif  // QSP_ROOTDATA_HPP

#include <algorithm>
#include <set>

#include "doctest.h"
#include "qsp/rootdata.hpp"

using namespace qsp;

TEST_CASE("cartan matrices and symmetrizers") {
  CartanData a2 = CartanData::simple('A', 2);
  CHECK(a2.eps() == std::vector<long>{1, 1});
  CartanData b3 = CartanData::simple('B', 3);
  CHECK(b3.eps() == std::vector<long>{2, 2, 1});
  CHECK(b3.a(2, 1) == -2);
  CHECK(b3.a(1, 2) == -1);
  CartanData c3 = CartanData::simple('C', 3);
  CHECK(c3.eps() == std::vector<long>{1, 1, 2});
  CHECK(c3.a(1, 2) == -2);
  CartanData f4 = CartanData::simple('F', 4);
  CHECK(f4.eps() == std::vector<long>{2, 2, 1, 1});
  CartanData g2 = CartanData::simple('G', 2);
  CHECK(g2.eps() == std::vector<long>{1, 3});
  CHECK(g2.a(0, 1) == -3);
  // Affine A1 (not finite type) must be rejected.
  CHECK_THROWS_AS(CartanData({{2, -2}, {-2, 2}}), error);
  CHECK_THROWS_AS(CartanData({{2, -1}, {0, 2}}), error);
  // Direct sums concatenate blocks.
  CartanData sum = CartanData::direct_sum(a2, g2);
  CHECK(sum.rank() == 4);
  CHECK(sum.a(0, 2) == 0);
  CHECK(sum.eps() == std::vector<long>{1, 1, 1, 3});
}

TEST_CASE("pairings and reflections") {
  CartanData b2 = CartanData::simple('B', 2);
  Weight a1 = weight_alpha(2, 0), a2w = weight_alpha(2, 1);
  CHECK(b2.pairing(a1, a1) == 4);   // long root, eps 2
  CHECK(b2.pairing(a2w, a2w) == 2);  // short root
  CHECK(b2.pairing(a1, a2w) == -2);
  CHECK(b2.reflect(0, a2w) == a1 + a2w);
  CHECK(b2.reflect(1, a1) == a1 + 2 * a2w);
  // act applies the rightmost letter first.
  CHECK(b2.act({0, 1}, a1) == b2.reflect(0, b2.reflect(1, a1)));
}

TEST_CASE("positive roots and kostant counts") {
  CHECK(positive_roots(CartanData::simple('A', 2)).size() == 3);
  CHECK(positive_roots(CartanData::simple('A', 3)).size() == 6);
  CHECK(positive_roots(CartanData::simple('B', 2)).size() == 4);
  CHECK(positive_roots(CartanData::simple('G', 2)).size() == 6);
  CHECK(positive_roots(CartanData::simple('D', 4)).size() == 12);
  CHECK(positive_roots(CartanData::simple('F', 4)).size() == 24);

  CartanData a2 = CartanData::simple('A', 2);
  // alpha1 + alpha2: either the sum root or alpha1 + alpha2 separately.
  CHECK(kostant_partition_count(a2, {1, 1}) == 2);
  CHECK(kostant_partition_count(a2, {2, 1}) == 2);
  CHECK(kostant_partition_count(a2, {2, 2}) == 3);
  CHECK(kostant_partition_count(a2, {0, 0}) == 1);
  CHECK(kostant_partition_count(a2, {1, 0}) == 1);
  CartanData b2 = CartanData::simple('B', 2);
  // alpha1 + 2 alpha2: (a1+2a2), (a1+a2)+a2, a1+a2+a2.
  CHECK(kostant_partition_count(b2, {1, 2}) == 3);
}

TEST_CASE("inversion sets and reduced words") {
  CartanData a2 = CartanData::simple('A', 2);
  auto inv = inversion_set(a2, {0, 1, 0});
  REQUIRE(inv.size() == 3);
  CHECK(inv[0] == Weight{1, 0});
  CHECK(inv[1] == Weight{1, 1});
  CHECK(inv[2] == Weight{0, 1});
  CHECK_THROWS_AS(inversion_set(a2, WeylWord{0, 0}), error);
  CHECK_THROWS_AS(inversion_set(a2, WeylWord{0, 1, 0, 1}), error);
}

TEST_CASE("weyl groups") {
  WeylGroup wa2(CartanData::simple('A', 2));
  CHECK(wa2.size() == 6);
  WeylGroup wb2(CartanData::simple('B', 2));
  CHECK(wb2.size() == 8);
  WeylGroup wg2(CartanData::simple('G', 2));
  CHECK(wg2.size() == 12);
  WeylGroup wa3(CartanData::simple('A', 3));
  CHECK(wa3.size() == 24);

  // Longest elements.
  CHECK(longest_word(CartanData::simple('A', 2), {0, 1}).size() == 3);
  CHECK(longest_word(CartanData::simple('B', 2), {0, 1}).size() == 4);
  CHECK(longest_word(CartanData::simple('G', 2), {0, 1}).size() == 6);
  CHECK(longest_word(CartanData::simple('A', 3), {0, 1, 2}).size() == 6);
  CHECK(longest_word(CartanData::simple('A', 3), {0, 2}) == WeylWord{0, 2});

  // Inverses, orders, braid relations.
  int x = wa2.from_word({0, 1});
  CHECK(wa2.order_of(x) == 3);
  CHECK(wa2.multiply(x, wa2.inverse(x)) == wa2.identity());
  CHECK(wa2.from_word({0, 1, 0}) == wa2.from_word({1, 0, 1}));
  CHECK(wb2.from_word({0, 1, 0, 1}) == wb2.from_word({1, 0, 1, 0}));
  CHECK(braid_order(CartanData::simple('A', 2), {0}, {1}) == 3);
  CHECK(braid_order(CartanData::simple('B', 2), {0}, {1}) == 4);
  CHECK(braid_order(CartanData::simple('G', 2), {0}, {1}) == 6);
  CHECK(wa2.is_reduced({0, 1, 0}));
  CHECK(!wa2.is_reduced({0, 1, 0, 1}));

  // w0 acts by -1 composed with the diagram flip on A_n.
  int w0 = wa3.longest_in_parabolic({0, 1, 2});
  CHECK(wa3.act(w0, weight_alpha(3, 0)) == -weight_alpha(3, 2));
  CHECK(wa3.act(w0, weight_alpha(3, 1)) == -weight_alpha(3, 1));
}

TEST_CASE("satake presets validate and classify") {
  for (const std::string& name : preset_names()) {
    CAPTURE(name);
    SatakeDiagram d = preset_diagram(name);
    CHECK(d.name() == name);
    // theta is an involution fixing Y^i.
    for (int j = 0; j < d.rank(); ++j) {
      Weight a = weight_alpha(d.rank(), j);
      CHECK(d.theta(d.theta(a)) == a);
    }
    for (const Weight& y : d.y_iota_basis()) {
      CHECK(d.theta(y) == y);
      CHECK(d.in_y_iota(y));
    }
    // bs_i = bs_{tau i}; black nodes map to simple roots under bs_i.
    for (int r : d.reps()) {
      const RelativeData& rd = d.relative(r);
      CHECK(d.weyl().is_reduced(rd.bs_word));
      if (d.tau(r) != r) CHECK(d.relative(d.tau(r)).bs_word == rd.bs_word);
      for (int j : d.black_nodes()) {
        CHECK(d.bs_act(r, weight_alpha(d.rank(), j)) ==
              weight_alpha(d.rank(), rd.tautau_i[j]));
      }
      // tau_i is an involution of I_{.,i}.
      for (int j = 0; j < d.rank(); ++j)
        CHECK(rd.tau_i[rd.tau_i[j]] == j);
    }
    // The compatible w0 word is reduced of full length.
    CHECK(d.weyl().is_reduced(d.w0_word()));
    CHECK(static_cast<int>(d.w0_word().size()) ==
          d.weyl().length(d.weyl().longest_in_parabolic([&] {
            std::vector<int> all(d.rank());
            for (int i = 0; i < d.rank(); ++i) all[i] = i;
            return all;
          }())));
  }
}

TEST_CASE("satake rejects bad data") {
  // Black A2 node with tau = id: w_.(alpha_1) = -alpha_1 fails in A2 rank 2
  // with one black node adjacent to white (condition 3 violation).
  CHECK_THROWS_AS(SatakeDiagram("bad", CartanData::simple('A', 2),
                                {true, false}, {0, 1}),
                  error);
  // tau not an involution.
  CHECK_THROWS_AS(SatakeDiagram("bad", CartanData::simple('A', 3),
                                {false, false, false}, {1, 2, 0}),
                  error);
  // tau not a diagram automorphism.
  CHECK_THROWS_AS(SatakeDiagram("bad", CartanData::simple('B', 2),
                                {false, false}, {1, 0}),
                  error);
}

TEST_CASE("bs words match the standard rank-1 words") {
  CHECK(preset_diagram("AI1").relative(0).bs_word == WeylWord{0});
  CHECK(preset_diagram("AI2").relative(0).bs_word == WeylWord{0});
  CHECK(preset_diagram("AIII11").relative(0).bs_word == WeylWord{0, 1});
  SatakeDiagram aii3 = preset_diagram("AII3");
  CHECK(aii3.reps() == std::vector<int>{1});
  CHECK(aii3.weyl().from_word(aii3.relative(1).bs_word) ==
        aii3.weyl().from_word({1, 0, 2, 1}));
  SatakeDiagram aiv2 = preset_diagram("AIV2");
  CHECK(aiv2.weyl().from_word(aiv2.relative(0).bs_word) ==
        aiv2.weyl().from_word({0, 1, 0}));
  SatakeDiagram bii2 = preset_diagram("BII2");
  CHECK(bii2.weyl().from_word(bii2.relative(0).bs_word) ==
        bii2.weyl().from_word({0, 1, 0}));
  SatakeDiagram cii3 = preset_diagram("CII3");
  CHECK(cii3.weyl().from_word(cii3.relative(1).bs_word) ==
        cii3.weyl().from_word({1, 2, 1, 0, 1, 2, 1}));
  SatakeDiagram dii4 = preset_diagram("DII4");
  CHECK(dii4.relative(0).bs_word.size() == 6);
  SatakeDiagram fii = preset_diagram("FII");
  CHECK(fii.relative(3).bs_word.size() == 15);

  CHECK(preset_diagram("AI1").relative(0).local.type == Rank1Type::AI1);
  CHECK(preset_diagram("AII3").relative(1).local.type == Rank1Type::AII3);
  CHECK(preset_diagram("AIII11").relative(0).local.type == Rank1Type::AIII11);
  CHECK(preset_diagram("AIV2").relative(0).local.type == Rank1Type::AIVn);
  CHECK(preset_diagram("BII2").relative(0).local.type == Rank1Type::BII);
  CHECK(preset_diagram("CII3").relative(1).local.type == Rank1Type::CII);
  CHECK(preset_diagram("DII4").relative(0).local.type == Rank1Type::DII);
  CHECK(preset_diagram("FII").relative(3).local.type == Rank1Type::FII);
  CHECK(preset_diagram("diagonal-A2").relative(0).local.type ==
        Rank1Type::AIII11);
}

TEST_CASE("relative braid orders") {
  SatakeDiagram ai2 = preset_diagram("AI2");
  CHECK(ai2.relative_braid_order(0, 1) == 3);
  SatakeDiagram aiii3 = preset_diagram("AIII3");
  CHECK(aiii3.reps() == std::vector<int>{0, 1});
  CHECK(aiii3.relative_braid_order(0, 1) == 4);
  SatakeDiagram ai3 = preset_diagram("AI3");
  CHECK(ai3.relative_braid_order(0, 1) == 3);
  CHECK(ai3.relative_braid_order(0, 2) == 2);
}

TEST_CASE("relative longest word and blocks") {
  SatakeDiagram aiii3 = preset_diagram("AIII3");
  // w0^o = bs_1 bs_2 bs_1 bs_2 (orbit representatives 0 and 1, 0-based).
  CHECK(aiii3.w0_circ_bs_word().size() == 4);
  const auto& blocks = aiii3.w0_block_offsets();
  REQUIRE(blocks.size() == 5);  // 4 blocks + start of R_.^+ (empty here)
  CHECK(blocks.back() == 6);    // l(w0) = 6, no black part
  SatakeDiagram cii3 = preset_diagram("CII3");
  // l(w0(C3)) = 9 = l(bs_2) + l(w_.) = 7 + 2.
  CHECK(cii3.w0_circ_bs_word() == std::vector<int>{1});
  CHECK(cii3.w0_block_offsets() == std::vector<int>{0, 7});
  CHECK(cii3.w0_word().size() == 9);
}

TEST_CASE("theta-fixed lattice") {
  SatakeDiagram ai2 = preset_diagram("AI2");
  CHECK(ai2.y_iota_basis().empty());
  SatakeDiagram aiv2 = preset_diagram("AIV2");
  REQUIRE(aiv2.y_iota_basis().size() == 1);
  CHECK(aiv2.y_iota_basis()[0] == Weight{1, -1});
  SatakeDiagram aiii3 = preset_diagram("AIII3");
  REQUIRE(aiii3.y_iota_basis().size() == 1);
  Weight y = aiii3.y_iota_basis()[0];
  CHECK((y == Weight{1, 0, -1} || y == Weight{-1, 0, 1}));
  SatakeDiagram aii3 = preset_diagram("AII3");
  CHECK(aii3.y_iota_basis().size() == 2);

  // Torus weight decomposition: mu = mu_iota + sum over alpha_r.
  Weight mu = {3, 0, -1};
  Weight mu_iota;
  REQUIRE(aiii3.decompose_torus_weight(mu, &mu_iota));
  CHECK(aiii3.in_y_iota(mu_iota));
  // Coordinates round-trip.
  Weight twice = 2 * aiii3.y_iota_basis()[0];
  CHECK(aiii3.y_iota_coordinates(twice) == std::vector<long>{2});
  CHECK_THROWS_AS(aiii3.y_iota_coordinates(weight_alpha(3, 0)), error);
}

TEST_CASE("c signs") {
  SatakeDiagram ai2 = preset_diagram("AI2");
  CHECK(ai2.c_sign(0) == -1);
  CHECK(ai2.c_sign(1) == -1);
  SatakeDiagram aii3 = preset_diagram("AII3");
  CHECK(aii3.c_sign(0) == 0);  // black
  CHECK(aii3.c_sign(1) == -1);
  SatakeDiagram aiv2 = preset_diagram("AIV2");
  CHECK(aiv2.c_sign(0) * aiv2.c_sign(1) ==
        (aiv2.two_rho_black_check(weight_alpha(2, 0)) % 2 == 0 ? 1 : -1));
}

TEST_CASE("integrality profiles from diagrams") {
  IntegralityProfile p = preset_diagram("AI2").profile();
  CHECK(!p.gaussian());
  CHECK(p.is_in_A_prime(Scalar::one() / (Scalar::q_power(1) + 1)));
  // AIV2 has an even local AIV chain: constants stay Z.
  CHECK(!preset_diagram("AIV2").profile().gaussian());
  // An odd AIV chain (AIV3: A3, tau 1<->3 with black node 2) gives Z[i].
  SatakeDiagram aiv3("AIV3", CartanData::simple('A', 3),
                     {false, true, false}, {2, 1, 0});
  CHECK(aiv3.profile().gaussian());
  CHECK(aiv3.relative(0).local.type == Rank1Type::AIVn);
  CHECK(aiv3.relative(0).local.nodes == std::vector<int>{0, 1, 2});
}

TEST_CASE("json configuration") {
  SatakeDiagram d = diagram_from_json_text(R"({
    "name": "my-aiii3",
    "type": "A", "rank": 3,
    "black": [],
    "tau": [[1, 3]]
  })");
  CHECK(d.name() == "my-aiii3");
  CHECK(d.tau(0) == 2);
  CHECK(d.y_iota_basis().size() == 1);

  SatakeDiagram p = diagram_from_json_text(R"({"preset": "AII3"})");
  CHECK(p.name() == "AII3");

  SatakeDiagram s = diagram_from_json_text(R"({
    "name": "diag",
    "components": [{"type": "A", "rank": 2}, {"type": "A", "rank": 2}],
    "tau": [[1, 3], [2, 4]]
  })");
  CHECK(s.rank() == 4);
  CHECK(s.tau(0) == 2);

  CHECK_THROWS_AS(diagram_from_json_text("{"), error);
  CHECK_THROWS_AS(diagram_from_json_text(R"({"type": "A"})"), error);
  CHECK_THROWS_AS(diagram_from_json_text(R"({"preset": "nope"})"), error);
}

#include "support.hpp"

#include <gtest/gtest.h>

using namespace lscat;
using testing_support::complex;

namespace {

bool mentions(const ValidationReport& r, const std::string& needle) {
  for (const auto& v : r.violations)
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Complex, BundledComplexesAreValid) {
  for (const char* name : {"point", "circle3", "circle6", "circle9", "sphere2", "disk", "torus"}) {
    auto k = complex(name);
    auto r = validate_complex(*k);
    EXPECT_TRUE(r.ok()) << name << ": " << (r.ok() ? "" : r.violations.front());
    for (const auto& [sub, members] : k->subcomplexes())
      EXPECT_TRUE(validate_subcomplex(*k, Subcomplex(sub, members)).ok()) << name << "/" << sub;
  }
}

TEST(Complex, TorusCounts) {
  auto t = complex("torus");
  EXPECT_EQ(t->vertex_count(), 9u);
  EXPECT_EQ(t->simplices_of_dim(1).size(), 27u);
  EXPECT_EQ(t->simplices_of_dim(2).size(), 18u);
  EXPECT_EQ(dimension(*t), 2);
  EXPECT_EQ(connected_components(*t).count, 1u);
}

TEST(Complex, MissingFaceIsNamed) {
  auto k = SimplicialComplex::from_labels("bad", {"a", "b", "c"},
                                          {{"a"}, {"b"}, {"c"}, {"a", "b"}, {"b", "c"}, {"a", "b", "c"}});
  auto r = validate_complex(k);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r, "face {a,c} of {a,b,c} missing"));
}

TEST(Complex, OtherViolations) {
  EXPECT_TRUE(mentions(validate_complex(SimplicialComplex("empty", {}, {})), "complex is empty"));
  auto lonely = SimplicialComplex::from_labels("lonely", {"a", "b", "z"}, {{"a"}, {"b"}, {"a", "b"}});
  EXPECT_TRUE(mentions(validate_complex(lonely), "vertex 'z' appears in no simplex"));
  auto repeat = SimplicialComplex("rep", {"a"}, {{0}, {0, 0}});
  EXPECT_TRUE(mentions(validate_complex(repeat), "repeats a vertex"));
  EXPECT_THROW(SimplicialComplex::from_labels("x", {"a"}, {{"q"}}), InputError);
}

TEST(Complex, SubcomplexMustBeClosed) {
  auto disk = complex("disk");
  Subcomplex open("open", {{disk->parse_simplex({"a", "b"})}});
  auto r = validate_subcomplex(*disk, open);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r, "face {a} of {a,b} missing"));
}

TEST(Complex, ComponentsOfDisjointUnion) {
  auto k = SimplicialComplex::from_labels("two", {"a", "b", "c", "d"},
                                          {{"a"}, {"b"}, {"c"}, {"d"}, {"a", "b"}, {"c", "d"}});
  auto c = connected_components(k);
  EXPECT_EQ(c.count, 2u);
  EXPECT_EQ(c.label, (std::vector<int>{0, 0, 1, 1}));
  auto pt = complex("point");
  EXPECT_EQ(connected_components(*pt).count, 1u);
  EXPECT_EQ(dimension(*pt), 0);
}

TEST(Map, BundledMapsAreValid) {
  for (const char* name : {"degree1", "degree2", "degree3", "constant_circle", "circle_to_point"}) {
    auto m = testing_support::map(name);
    auto r = validate_map(*m);
    EXPECT_TRUE(r.ok()) << name << ": " << (r.ok() ? "" : r.violations.front());
  }
}

TEST(Map, ImageMustBeASimplex) {
  auto s2 = complex("sphere2");
  auto c3 = complex("circle3");
  // sending the 2-simplex {a,b,c} onto three distinct circle vertices has no image simplex
  SimplicialMap f("squash", s2, c3, {0, 1, 2, 0});
  auto r = validate_map(f);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r, "image {v0,v1,v2} of simplex {a,b,c}"));
}

TEST(Map, PairConditionChecked) {
  auto disk = complex("disk");
  // identity as a map (disk, boundary) -> (disk, no subcomplex) violates f(C) ⊆ A
  SimplicialMap bad("bad", disk, disk, {0, 1, 2}, std::string("boundary"), std::nullopt);
  EXPECT_FALSE(validate_map(bad).ok());
  SimplicialMap good("good", disk, disk, {0, 1, 2}, std::string("boundary"), std::string("boundary"));
  EXPECT_TRUE(validate_map(good).ok());
  SimplicialMap unknown("unknown", disk, disk, {0, 1, 2}, std::string("nope"), std::string("boundary"));
  EXPECT_TRUE(mentions(validate_map(unknown), "no subcomplex named 'nope'"));
}

TEST(Map, CompositionOfVertexMaps) {
  auto d2 = testing_support::map("degree2");
  auto d1 = testing_support::map("degree1");
  auto c = compose(*d1, *d2);
  EXPECT_EQ(c.vertex_image(), d2->vertex_image());
  EXPECT_TRUE(validate_map(c).ok());
}

TEST(Io, ComplexRoundTrip) {
  auto t = complex("torus");
  auto back = complex_from_json(complex_to_json(*t));
  EXPECT_EQ(back.simplices(), t->simplices());
  EXPECT_EQ(back.subcomplex("diagonal"), t->subcomplex("diagonal"));
}

TEST(Io, MapErrors) {
  ComplexRegistry reg{{"circle3", complex("circle3")}};
  Json missing = {{"map", {{"source", "circle3"}, {"target", "circle3"}, {"vertex_image", {{"v0", "v0"}, {"v1", "v1"}}}}}};
  EXPECT_THROW(map_from_json(missing, reg, "m"), InputError);
  Json unknown = {{"map", {{"source", "circle9"}, {"target", "circle3"}, {"vertex_image", Json::object()}}}};
  EXPECT_THROW(map_from_json(unknown, reg, "m"), InputError);
  EXPECT_THROW(read_json("/nonexistent/file.json"), IoError);
}

#include "test_util.hpp"

#include <cstdio>
#include <fstream>

#include "qubitizer/errors.hpp"
#include "qubitizer/spec_io.hpp"

using namespace qubitizer;
using nlohmann::json;

namespace {

ErrorCode code_of(const json& j) {
  try {
    spec_from_json(j);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << j.dump();
  return ErrorCode::kParseError;
}

}  // namespace

TEST(SpecJson, DocumentedExample) {
  const StructuredSpec s = spec_from_json(
      json::parse(R"({"kind": "circulant", "m": 16, "n": 3, "weight": [1.0, 0.0], "variant": "recursive"})"));
  EXPECT_EQ(s.kind, StructuredKind::Circulant);
  EXPECT_EQ(s.m, 16u);
  EXPECT_EQ(s.n, 3u);
  EXPECT_EQ(s.weight, cplx(1.0));
  EXPECT_EQ(s.variant, "recursive");
  EXPECT_NO_THROW(validate(s));
}

TEST(SpecJson, GridAndPayloads) {
  const StructuredSpec g = spec_from_json(json::parse(R"({"kind": "grid", "dims": [4, 4], "cyclic": [false, true]})"));
  EXPECT_EQ(g.dims, (std::vector<std::size_t>{4, 4}));
  EXPECT_EQ(g.cyclic, (std::vector<bool>{false, true}));
  const StructuredSpec p = spec_from_json(json::parse(R"({"kind": "permutation_table", "m": 4, "table": [2, 3, 1, 0]})"));
  EXPECT_EQ(p.table, (std::vector<std::size_t>{2, 3, 1, 0}));
  const StructuredSpec d = spec_from_json(json::parse(R"({"kind": "density_matrix", "psi": [0.6, [0, 0.8]]})"));
  ASSERT_EQ(d.psi.size(), 2u);
  EXPECT_EQ(d.psi[1], cplx(0.0, 0.8));
  EXPECT_NO_THROW(validate(d));
}

TEST(SpecJson, RoundTripEveryKind) {
  std::vector<StructuredSpec> specs;
  StructuredSpec s;
  s.m = 8;
  s.n = 3;
  s.weight = cplx(0.5, -0.25);
  for (StructuredKind k : {StructuredKind::ToeplitzDiag, StructuredKind::Circulant, StructuredKind::CirculantAdder}) {
    s.kind = k;
    specs.push_back(s);
  }
  s.weight = 1.0;
  s.kind = StructuredKind::HankelAntiDiag;
  specs.push_back(s);
  s.kind = StructuredKind::AntiCirculant;
  s.variant = "anti_adder";
  specs.push_back(s);
  s.variant.clear();
  s.kind = StructuredKind::CornerEmbed;
  s.s = 32;
  specs.push_back(s);
  s.kind = StructuredKind::CircularPermutation;
  s.table = {1, 2, 3, 4, 5, 6, 7, 0};
  specs.push_back(s);
  s.kind = StructuredKind::PermutationTable;
  s.table = {7, 6, 5, 4, 3, 2, 1, 0};
  specs.push_back(s);
  StructuredSpec r;
  r.kind = StructuredKind::OuterProduct;
  r.psi = {M_SQRT1_2, cplx(0, M_SQRT1_2)};
  r.phi = {1.0, 0.0};
  specs.push_back(r);
  r.kind = StructuredKind::LineColumn;
  r.index = 1;
  r.line = true;
  specs.push_back(r);
  StructuredSpec g;
  g.kind = StructuredKind::Grid;
  g.dims = {2, 4};
  g.cyclic = {true, false};
  g.axis_weights = {1.0, -2.0};
  specs.push_back(g);

  for (const StructuredSpec& spec : specs) {
    const json j = spec_to_json(spec);
    const StructuredSpec back = spec_from_json(json::parse(j.dump()));
    EXPECT_EQ(spec_to_json(back), j) << j.dump();
    EXPECT_MATRIX_NEAR(dense_oracle(back), dense_oracle(spec), 0.0) << j.dump();
  }
}

TEST(SpecJson, Errors) {
  EXPECT_EQ(code_of(json::array()), ErrorCode::kInvalidSpec);
  EXPECT_EQ(code_of(json::parse(R"({"m": 4})")), ErrorCode::kInvalidSpec);
  EXPECT_EQ(code_of(json::parse(R"({"kind": "banana"})")), ErrorCode::kInvalidSpec);
  EXPECT_EQ(code_of(json::parse(R"({"kind": 3})")), ErrorCode::kInvalidSpec);
  EXPECT_EQ(code_of(json::parse(R"({"kind": "circulant", "m": "four"})")), ErrorCode::kInvalidSpec);
  EXPECT_EQ(code_of(json::parse(R"({"kind": "circulant", "weight": [1, 2, 3]})")), ErrorCode::kInvalidSpec);
  EXPECT_EQ(code_of(json::parse(R"({"kind": "density_matrix", "psi": "abc"})")), ErrorCode::kInvalidSpec);
  EXPECT_EQ(code_of(json::parse(R"({"kind": "grid", "dims": [4, "x"]})")), ErrorCode::kInvalidSpec);
}

TEST(JsonFile, ReadAndErrors) {
  const std::string path = ::testing::TempDir() + "spec_io_test.json";
  {
    std::ofstream out(path);
    out << R"({"kind": "toeplitz_diag", "m": 4, "n": 3})";
  }
  EXPECT_EQ(spec_from_json(read_json_file(path)).n, 3u);
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  try {
    read_json_file(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
  }
  std::remove(path.c_str());
  try {
    read_json_file(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
  }
}

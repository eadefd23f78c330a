#include <random>
#include <set>

#include "doctest.h"
#include "sonia/pack/csv.hpp"
#include "sonia/pack/loader.hpp"
#include "test_support.hpp"

using namespace sonia;
using namespace sonia::pack;
using sonia::testing::TempDir;

namespace {

std::set<DiagCode> error_codes(const std::vector<Diagnostic>& diags) {
  std::set<DiagCode> out;
  for (const auto& d : diags) {
    if (d.severity == Severity::kError) out.insert(d.code);
  }
  return out;
}

bool has_code(const std::vector<Diagnostic>& diags, DiagCode code) {
  return std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.code == code; });
}

const std::vector<StructureDef> kTwoKeys{
    {"a", "A", "first", "a.obj", StructureKind::kKey},
    {"b", "B", "second", "b.obj", StructureKind::kKey},
};

}  // namespace

TEST_CASE("csv reader") {
  SUBCASE("quoted fields keep commas, quotes and newlines") {
    const auto r = read_csv("x,y\n\"a,b\",\"say \"\"hi\"\"\"\n\"multi\nline\",z\n", "t.csv");
    REQUIRE(r.ok());
    const auto& rec = *r.value;
    REQUIRE(rec.size() == 3);
    CHECK(rec[1].fields == std::vector<std::string>{"a,b", "say \"hi\""});
    CHECK(rec[2].fields == std::vector<std::string>{"multi\nline", "z"});
    CHECK(rec[2].line == 3);
  }
  SUBCASE("CRLF, BOM and blank lines") {
    const auto r = read_csv("\xEF\xBB\xBFid,name\r\n\r\na,b\r\n", "t.csv");
    REQUIRE(r.ok());
    REQUIRE(r.value->size() == 2);
    CHECK(r.value->at(0).fields[0] == "id");
    CHECK(r.value->at(1).line == 3);
  }
  SUBCASE("unterminated quote is E_CSV_SYNTAX at the opening line") {
    const auto r = read_csv("id\n\"open\nmore\n", "t.csv");
    REQUIRE_FALSE(r.ok());
    CHECK(r.diagnostics.at(0).code == DiagCode::kCsvSyntax);
    CHECK(r.diagnostics.at(0).location.line == 2);
  }
  SUBCASE("escape round-trips through the reader") {
    const std::vector<std::string> fields{"plain", "with,comma", "with \"quote\"", "two\nlines", ""};
    const auto r = read_csv(csv_row(fields), "t.csv");
    REQUIRE(r.ok());
    CHECK(r.value->at(0).fields == fields);
  }
}

TEST_CASE("parse_mesh") {
  SUBCASE("single triangle") {
    const auto r = parse_mesh("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3");
    REQUIRE(r.ok());
    CHECK(r.value->vertices.size() == 3);
    REQUIRE(r.value->faces.size() == 1);
    CHECK(r.value->faces[0] == Face{0, 1, 2});
    CHECK(r.diagnostics.empty());
  }
  SUBCASE("index past the vertex list is E_MESH_INDEX on that line") {
    const auto r = parse_mesh("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4");
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].code == DiagCode::kMeshIndex);
    CHECK(r.diagnostics[0].location.line == 4);
  }
  SUBCASE("degenerate face is a warning, not an error") {
    const auto r = parse_mesh("v 0 0 0\nf 1 1 1");
    REQUIRE(r.ok());
    CHECK(error_codes(r.diagnostics).empty());
    CHECK(has_code(r.diagnostics, DiagCode::kDegenerateFace));
  }
  SUBCASE("zero-area sliver is degenerate") {
    const auto r = parse_mesh("v 0 0 0\nv 1 0 0\nv 2 0 0\nf 1 2 3\n");
    REQUIRE(r.ok());
    CHECK(has_code(r.diagnostics, DiagCode::kDegenerateFace));
  }
  SUBCASE("non-numeric field is E_BAD_ROW") {
    const auto r = parse_mesh("v 0 zero 0\nv 1 0 0\nv 0 1 0\nf 1 2 3");
    CHECK(error_codes(r.diagnostics) == std::set{DiagCode::kBadRow});
  }
  SUBCASE("non-finite coordinate is E_NONFINITE") {
    const auto r = parse_mesh("v nan 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3");
    CHECK(error_codes(r.diagnostics) == std::set{DiagCode::kNonFinite});
  }
  SUBCASE("missing vertices or faces is E_EMPTY") {
    CHECK(error_codes(parse_mesh("# nothing\n").diagnostics) == std::set{DiagCode::kEmpty});
    CHECK(error_codes(parse_mesh("v 0 0 0\nv 1 0 0\n").diagnostics) == std::set{DiagCode::kEmpty});
  }
  SUBCASE("other statements warn once per keyword") {
    const auto r = parse_mesh("o thing\nvn 0 0 1\nvn 0 1 0\nv 0 0 0\nv 1 0 0\nv 0 1 0\nf 1//1 2//1 3//2\n");
    REQUIRE(r.ok());
    std::size_t ignored = 0;
    for (const auto& d : r.diagnostics) ignored += d.code == DiagCode::kIgnoredLine;
    CHECK(ignored == 2);
    CHECK(r.value->faces[0] == Face{0, 1, 2});
  }
  SUBCASE("quads are fan-triangulated") {
    const auto r = parse_mesh("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
    REQUIRE(r.ok());
    CHECK(r.value->faces == std::vector<Face>{{0, 1, 2}, {0, 2, 3}});
  }
  SUBCASE("write_obj round-trips exactly") {
    MeshModel m{{{0.1, -2.5e-7, 1e300}, {1.0 / 3.0, 2, 3}, {-0.0, 7, 8}}, {{0, 1, 2}}};
    const auto r = parse_mesh(write_obj(m));
    REQUIRE(r.ok());
    CHECK(*r.value == m);
  }
}

TEST_CASE("parse_structures") {
  const std::string header = "id,name,description,mesh_file,kind\n";
  SUBCASE("one key row") {
    const auto r = parse_structures(header + "amygdala,Amygdala,Fear-processing hub,amygdala.obj,key\n");
    REQUIRE(r.ok());
    REQUIRE(r.value->size() == 1);
    CHECK(r.value->at(0) ==
          StructureDef{"amygdala", "Amygdala", "Fear-processing hub", "amygdala.obj", StructureKind::kKey});
  }
  SUBCASE("duplicate id flagged on the second row") {
    const auto r = parse_structures(header + "amygdala,A,d,a.obj,key\namygdala,A,d,a.obj,key\n");
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].code == DiagCode::kDupId);
    CHECK(r.diagnostics[0].location.line == 3);
  }
  SUBCASE("unknown kind is E_BAD_ROW") {
    const auto r = parse_structures(header + "amygdala,A,d,a.obj,primary\n");
    CHECK(error_codes(r.diagnostics) == std::set{DiagCode::kBadRow});
  }
  SUBCASE("wrong column count is E_BAD_ROW") {
    const auto r = parse_structures(header + "amygdala,A,d,a.obj\n");
    CHECK(error_codes(r.diagnostics) == std::set{DiagCode::kBadRow});
  }
  SUBCASE("key structures need a description, peripheral ones do not") {
    CHECK(error_codes(parse_structures(header + "a,A,,a.obj,key\n").diagnostics) ==
          std::set{DiagCode::kMissingDesc});
    CHECK(parse_structures(header + "a,A,,a.obj,peripheral\n").ok());
  }
  SUBCASE("ids must be lowercase slugs") {
    CHECK(error_codes(parse_structures(header + "Amygdala,A,d,a.obj,key\n").diagnostics) ==
          std::set{DiagCode::kBadId});
  }
  SUBCASE("bad header") {
    CHECK(error_codes(parse_structures("id,name,mesh_file,kind\n").diagnostics) == std::set{DiagCode::kBadHeader});
  }
}

TEST_CASE("parse_subsystems") {
  const std::string header = "id,name,description\n";
  SUBCASE("the five anxiety subsystems") {
    const auto r = parse_subsystems(header +
                                    "cognitive_control,Cognitive control,x\n"
                                    "fear_conditioning,Fear conditioning,x\n"
                                    "uncertainty_anticipation,Uncertainty anticipation,x\n"
                                    "motivation_processing,Motivation processing,x\n"
                                    "stress_regulation,Stress regulation,x\n");
    REQUIRE(r.ok());
    REQUIRE(r.value->size() == 5);
    CHECK(r.value->at(2).name == "Uncertainty anticipation");
  }
  SUBCASE("empty data section is legal") {
    const auto r = parse_subsystems(header);
    REQUIRE(r.ok());
    CHECK(r.value->empty());
  }
  SUBCASE("duplicate id") {
    CHECK(error_codes(parse_subsystems(header + "x,X,\nx,X,\n").diagnostics) == std::set{DiagCode::kDupId});
  }
}

TEST_CASE("parse_connections") {
  const std::vector<StructureDef> structures{
      {"amygdala", "Amygdala", "d", "a.obj", StructureKind::kKey},
      {"mpfc", "mPFC", "d", "m.obj", StructureKind::kKey},
      {"thal", "Thalamus", "", "t.obj", StructureKind::kPeripheral},
  };
  const std::vector<SubsystemDef> subsystems{{"fear_conditioning", "Fear", ""}, {"cognitive_control", "Control", ""}};
  const std::string header = "source_id,target_id,description,subsystem_ids\n";

  SUBCASE("membership list") {
    const auto r = parse_connections(
        header + "amygdala,mpfc,Threat signal relayed...,fear_conditioning;cognitive_control\n", structures,
        subsystems);
    REQUIRE(r.ok());
    REQUIRE(r.value->size() == 1);
    CHECK(r.value->at(0).subsystem_ids == std::vector<std::string>{"fear_conditioning", "cognitive_control"});
  }
  SUBCASE("empty membership") {
    const auto r = parse_connections(header + "amygdala,mpfc,x,\n", structures, subsystems);
    REQUIRE(r.ok());
    CHECK(r.value->at(0).subsystem_ids.empty());
  }
  SUBCASE("self loop") {
    CHECK(error_codes(parse_connections(header + "amygdala,amygdala,x,\n", structures, subsystems).diagnostics) ==
          std::set{DiagCode::kSelfLoop});
  }
  SUBCASE("unknown subsystem token") {
    CHECK(error_codes(parse_connections(header + "amygdala,mpfc,x,unknown_sub\n", structures, subsystems)
                          .diagnostics) == std::set{DiagCode::kIdMismatch});
  }
  SUBCASE("unknown or peripheral endpoint") {
    CHECK(error_codes(parse_connections(header + "amygdala,nope,x,\n", structures, subsystems).diagnostics) ==
          std::set{DiagCode::kIdMismatch});
    CHECK(error_codes(parse_connections(header + "amygdala,thal,x,\n", structures, subsystems).diagnostics) ==
          std::set{DiagCode::kIdMismatch});
  }
  SUBCASE("direction matters: A->B and B->A coexist, repeats do not") {
    CHECK(parse_connections(header + "amygdala,mpfc,x,\nmpfc,amygdala,y,\n", structures, subsystems).ok());
    CHECK(error_codes(parse_connections(header + "amygdala,mpfc,x,\namygdala,mpfc,y,\n", structures, subsystems)
                          .diagnostics) == std::set{DiagCode::kDupId});
  }
}

TEST_CASE("parse_matrix") {
  const std::vector<std::string> ab{"a", "b"};
  SUBCASE("single edge") {
    const auto r = parse_matrix(",a,b\na,0,1\nb,0,0\n", ab);
    REQUIRE(r.ok());
    CHECK(r.value->edges() == std::vector<EdgeKey>{{"a", "b"}});
  }
  SUBCASE("header order is free, rows must follow it") {
    const auto r = parse_matrix(",b,a\nb,0,0\na,1,0\n", ab);
    REQUIRE(r.ok());
    CHECK(r.value->edges() == std::vector<EdgeKey>{{"a", "b"}});
    CHECK(error_codes(parse_matrix(",a,b\nb,0,0\na,0,0\n", ab).diagnostics) == std::set{DiagCode::kIdMismatch});
  }
  SUBCASE("diagonal") {
    CHECK(error_codes(parse_matrix(",a,b\na,1,0\nb,0,0\n", ab).diagnostics) == std::set{DiagCode::kSelfLoop});
  }
  SUBCASE("non-square data block") {
    CHECK(error_codes(parse_matrix(",a,b\na,0,1,0\nb,0,0,0\n", ab).diagnostics) == std::set{DiagCode::kBadRow});
    CHECK(error_codes(parse_matrix(",a,b\na,0,1\n", ab).diagnostics) == std::set{DiagCode::kBadRow});
  }
  SUBCASE("non-binary cell") {
    CHECK(error_codes(parse_matrix(",a,b\na,0,2\nb,0,0\n", ab).diagnostics) == std::set{DiagCode::kBadRow});
  }
  SUBCASE("header set must match") {
    CHECK(error_codes(parse_matrix(",a,c\na,0,0\nc,0,0\n", ab).diagnostics) == std::set{DiagCode::kIdMismatch});
  }
}

TEST_CASE("load_pack on the anxiety fixture") {
  const auto r = load_pack(sonia::testing::anxiety_pack());
  for (const auto& d : r.diagnostics) MESSAGE(format_diagnostic(d));
  REQUIRE(r.ok());
  CHECK_FALSE(has_errors(r.diagnostics));
  const auto& pack = *r.value;
  CHECK(pack.key_structures().size() == 6);
  CHECK(pack.subsystems.size() == 5);
  CHECK(pack.meshes.size() == 6);

  // Each subsystem spans two or three structures.
  for (const auto& sub : pack.subsystems) {
    std::set<std::string> span;
    for (const auto& c : pack.connections) {
      if (std::find(c.subsystem_ids.begin(), c.subsystem_ids.end(), sub.id) != c.subsystem_ids.end()) {
        span.insert(c.source_id);
        span.insert(c.target_id);
      }
    }
    CHECK_MESSAGE((span.size() >= 2 && span.size() <= 3), sub.id);
  }

  // Matrix and edge list agree exactly.
  std::set<EdgeKey> from_matrix;
  for (auto& e : pack.key_matrix.edges()) from_matrix.insert(e);
  std::set<EdgeKey> from_list;
  for (const auto& c : pack.connections) from_list.emplace(c.source_id, c.target_id);
  CHECK(from_matrix == from_list);
}

TEST_CASE("load_pack cross-file errors") {
  TempDir tmp;
  const auto dir = sonia::testing::copy_pack(sonia::testing::anxiety_pack(), tmp.path() / "pack");

  SUBCASE("matrix edge without a description row") {
    auto text = sonia::testing::read_file(dir / "matrix.csv");
    // striatum -> amygdala is absent from connections.csv
    const auto pos = text.find("striatum,0");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 10, "striatum,1");
    sonia::testing::write_file(dir / "matrix.csv", text);
    const auto r = load_pack(dir);
    CHECK(error_codes(r.diagnostics) == std::set{DiagCode::kMatrixDescMismatch});
    CHECK(r.diagnostics.at(0).location.file == "matrix.csv");
    CHECK(r.diagnostics.at(0).location.line == 4);
  }
  SUBCASE("mesh file absent") {
    auto text = sonia::testing::read_file(dir / "structures.csv");
    text.replace(text.find("meshes/bnst.obj"), 15, "missing.obj");
    sonia::testing::write_file(dir / "structures.csv", text);
    const auto r = load_pack(dir);
    CHECK(error_codes(r.diagnostics) == std::set{DiagCode::kMissingMesh});
  }
  SUBCASE("missing pack directory") {
    const auto r = load_pack(tmp.path() / "nope");
    CHECK(error_codes(r.diagnostics) == std::set{DiagCode::kMissingFile});
  }
}

TEST_CASE("round-trip: write_pack then load_pack yields an equal pack") {
  const auto original = load_pack(sonia::testing::anxiety_pack());
  REQUIRE(original.ok());
  TempDir tmp;
  write_pack(*original.value, tmp.path());
  const auto again = load_pack(tmp.path());
  REQUIRE(again.ok());
  CHECK(*again.value == *original.value);
}

TEST_CASE("determinism: identical bytes give identical packs and diagnostics") {
  const auto a = load_pack(sonia::testing::anxiety_pack());
  const auto b = load_pack(sonia::testing::anxiety_pack());
  REQUIRE(a.ok());
  CHECK(*a.value == *b.value);
  CHECK(a.diagnostics == b.diagnostics);
}

TEST_CASE("fuzz: mutated CSV and OBJ never crash and never yield an invalid pack") {
  std::mt19937_64 rng(20240611);
  const auto base = sonia::testing::anxiety_pack();
  const std::vector<std::string> files{"structures.csv", "connections.csv", "matrix.csv", "subsystems.csv",
                                       "meshes/amygdala.obj"};
  const std::string alphabet = ",\"\n\r;01ab_ -.x";
  for (int iter = 0; iter < 150; ++iter) {
    TempDir tmp;
    const auto dir = sonia::testing::copy_pack(base, tmp.path() / "pack");
    const auto& target = files[iter % files.size()];
    auto text = sonia::testing::read_file(dir / target);
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits && !text.empty(); ++e) {
      const std::size_t pos = rng() % text.size();
      switch (rng() % 3) {
        case 0: text[pos] = alphabet[rng() % alphabet.size()]; break;
        case 1: text.erase(pos, 1 + rng() % 8); break;
        default: text.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
      }
    }
    sonia::testing::write_file(dir / target, text);
    const auto r = load_pack(dir);
    CHECK(r.ok() != has_errors(r.diagnostics));
    for (const auto& d : r.diagnostics) CHECK(to_string(d.code) != "E_UNKNOWN");
    if (!r.ok()) continue;
    // A pack that loads must satisfy every invariant.
    const auto& p = *r.value;
    CHECK_FALSE(p.key_structures().empty());
    std::set<std::string> ids;
    for (const auto& s : p.structures) {
      CHECK(is_slug(s.id));
      CHECK(ids.insert(s.id).second);
      CHECK(p.meshes.contains(s.id));
    }
    std::set<EdgeKey> from_matrix;
    for (auto& e : p.key_matrix.edges()) from_matrix.insert(e);
    std::set<EdgeKey> from_list;
    for (const auto& c : p.connections) {
      CHECK(c.source_id != c.target_id);
      from_list.emplace(c.source_id, c.target_id);
    }
    CHECK(from_matrix == from_list);
    for (const auto& [id, mesh] : p.meshes) {
      CHECK_FALSE(mesh.vertices.empty());
      CHECK_FALSE(mesh.faces.empty());
      for (const auto& f : mesh.faces) {
        for (auto i : f) CHECK(i < mesh.vertices.size());
      }
    }
  }
}

#include <array>
#include <string>

#include "doctest.h"
#include "mixtag/errors.hpp"
#include "mixtag/templates.hpp"

using namespace mixtag;

namespace {

// A matrix with recognizable cell values: "r<row>c<col>" except col 0, which
// holds plain token text.
ObservationMatrix toy_matrix(std::size_t rows) {
  ObservationMatrix matrix;
  for (std::size_t r = 0; r < rows; ++r) {
    std::array<std::string, kObservationColumns> row;
    row[0] = "tok" + std::to_string(r);
    for (int c = 1; c < kObservationColumns; ++c) {
      row[static_cast<std::size_t>(c)] =
          "r" + std::to_string(r) + "c" + std::to_string(c);
    }
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

}  // namespace

TEST_CASE("parse_templates reads macro bodies") {
  TemplateSet set = parse_templates("U1:%x[0,20]/%x[0,21]\n");
  REQUIRE(set.templates().size() == 1);
  const Template& tpl = set.templates()[0];
  CHECK(tpl.id == "U1");
  CHECK(tpl.kind == TemplateKind::kUnigram);
  REQUIRE(tpl.macros.size() == 2);
  CHECK(tpl.macros[0].row_offset == 0);
  CHECK(tpl.macros[0].col == 20);
  CHECK(tpl.macros[1].col == 21);
  REQUIRE(tpl.literals.size() == 3);
  CHECK(tpl.literals[0] == "");
  CHECK(tpl.literals[1] == "/");
  CHECK(tpl.literals[2] == "");
}

TEST_CASE("parse_templates accepts the bare bigram line") {
  TemplateSet set = parse_templates("B\n");
  REQUIRE(set.templates().size() == 1);
  CHECK(set.templates()[0].kind == TemplateKind::kBigram);
  CHECK(set.templates()[0].id == "B");
  CHECK(set.templates()[0].macros.empty());
  CHECK_FALSE(set.has_unigram());
}

TEST_CASE("parse_templates handles negative row offsets") {
  TemplateSet set = parse_templates("U9:%x[-3,0]\n");
  CHECK(set.templates()[0].macros[0].row_offset == -3);
  CHECK(set.templates()[0].macros[0].col == 0);
}

TEST_CASE("parse_templates skips comments and blank lines") {
  TemplateSet set = parse_templates(
      "# window\n\nU0:%x[0,0]\n   \n# another\nB\n");
  CHECK(set.templates().size() == 2);
  CHECK(set.has_unigram());
}

TEST_CASE("parse_templates errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_templates("U0:%x[0,0]\nU0:%x[0,1]\n"),
                       "line 2: duplicate template id 'U0'", DataError);
  CHECK_THROWS_WITH_AS(parse_templates("U0:%t\n"),
                       "line 1: macro %t is not supported", DataError);
  CHECK_THROWS_WITH_AS(parse_templates("U0:%m\n"),
                       "line 1: macro %m is not supported", DataError);
  CHECK_THROWS_AS(parse_templates("U0:%x[0,-2]\n"), DataError);
  CHECK_THROWS_AS(parse_templates("U0:%x[0 0]\n"), DataError);
  CHECK_THROWS_AS(parse_templates("U0:%x[a,0]\n"), DataError);
  CHECK_THROWS_AS(parse_templates("U0:%x[0,0\n"), DataError);
  CHECK_THROWS_AS(parse_templates("U0:%y[0,0]\n"), DataError);
  CHECK_THROWS_AS(parse_templates("X0:%x[0,0]\n"), DataError);
  CHECK_THROWS_AS(parse_templates("U0\n"), DataError);  // unigram needs a body
  CHECK_THROWS_AS(parse_templates("U0:\t%x[0,0]\n"), DataError);  // tab
  CHECK_THROWS_WITH_AS(parse_templates("# only comments\n\n"),
                       "template file contains no templates", DataError);
  CHECK_THROWS_WITH_AS(parse_templates(""),
                       "template file contains no templates", DataError);
}

TEST_CASE("duplicate ids are rejected at construction too") {
  Template a{"U0", TemplateKind::kUnigram, {{0, 0}}, {"", ""}};
  CHECK_THROWS_AS(TemplateSet({a, a}), DataError);
}

TEST_CASE("validate_columns flags out-of-layout references") {
  TemplateSet ok = parse_templates("U0:%x[0,22]\n");
  CHECK_NOTHROW(ok.validate_columns());
  TemplateSet bad = parse_templates("U0:%x[0,40]\n");
  CHECK_THROWS_WITH_AS(
      bad.validate_columns(),
      "layout mismatch: template U0 references column 40 but the observation "
      "layout has 23 columns",
      DataError);
}

TEST_CASE("expand substitutes matrix cells") {
  ObservationMatrix matrix = toy_matrix(3);
  Template u00{"U00", TemplateKind::kUnigram, {{0, 0}}, {"", ""}};
  CHECK(expand(u00, matrix, 0) == "U00:tok0");
  CHECK(expand(u00, matrix, 2) == "U00:tok2");

  Template pair{"U1", TemplateKind::kUnigram, {{0, 20}, {0, 21}},
                {"", "/", ""}};
  CHECK(expand(pair, matrix, 1) == "U1:r1c20/r1c21");
}

TEST_CASE("expand emits boundary sentinels for out-of-range rows") {
  ObservationMatrix matrix = toy_matrix(2);
  Template prev{"U01", TemplateKind::kUnigram, {{-1, 0}}, {"", ""}};
  CHECK(expand(prev, matrix, 0) == "U01:_B-1");
  CHECK(expand(prev, matrix, 1) == "U01:tok0");

  Template prev3{"U9", TemplateKind::kUnigram, {{-3, 0}}, {"", ""}};
  CHECK(expand(prev3, matrix, 0) == "U9:_B-3");
  CHECK(expand(prev3, matrix, 1) == "U9:_B-2");

  Template next{"U5", TemplateKind::kUnigram, {{1, 0}}, {"", ""}};
  CHECK(expand(next, matrix, 1) == "U5:_B+1");
  Template next2{"U6", TemplateKind::kUnigram, {{2, 0}}, {"", ""}};
  CHECK(expand(next2, matrix, 1) == "U6:_B+2");
}

TEST_CASE("bare bigram expands to its id and colon") {
  ObservationMatrix matrix = toy_matrix(2);
  Template bare{"B", TemplateKind::kBigram, {}, {""}};
  CHECK(expand(bare, matrix, 1) == "B:");
}

TEST_CASE("pretty_print round-trips through the parser") {
  const char* source =
      "U00:%x[0,0]\n"
      "U01:%x[-1,0]/%x[1,0]\n"
      "U02:left%x[0,2]right\n"
      "B\n"
      "B1:%x[0,0]\n";
  TemplateSet set = parse_templates(source);
  std::string printed = set.pretty_print();
  TemplateSet reparsed = parse_templates(printed);
  CHECK(reparsed == set);
  CHECK(reparsed.pretty_print() == printed);
}

TEST_CASE("default template set shape") {
  TemplateSet set = default_template_set();
  const auto& tpls = set.templates();
  REQUIRE(tpls.size() == 51);
  CHECK_NOTHROW(set.validate_columns());
  CHECK(set.has_unigram());

  // seven token-window templates over column 0
  int window = 0;
  for (const Template& t : tpls) {
    if (t.kind == TemplateKind::kUnigram && t.macros.size() == 1 &&
        t.macros[0].col == 0) {
      ++window;
    }
  }
  CHECK(window == 7);
  CHECK(tpls[0].id == "U00");
  CHECK(tpls[0].macros[0].row_offset == -3);
  CHECK(tpls[6].macros[0].row_offset == 3);

  // exactly one bigram template, the bare B, and it comes last
  CHECK(tpls.back().id == "B");
  CHECK(tpls.back().kind == TemplateKind::kBigram);
  int bigrams = 0;
  for (const Template& t : tpls) {
    if (t.kind == TemplateKind::kBigram) ++bigrams;
  }
  CHECK(bigrams == 1);

  // the NE pair template joins columns 21 and 22
  const Template& u49 = tpls[50 - 1];
  CHECK(u49.id == "U49");
  REQUIRE(u49.macros.size() == 2);
  CHECK(u49.macros[0].col == 21);
  CHECK(u49.macros[1].col == 22);

  // identity under print + parse
  CHECK(parse_templates(set.pretty_print()) == set);
}

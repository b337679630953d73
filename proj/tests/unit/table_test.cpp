#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "infodd/table.hpp"
#include "infodd/table_io.hpp"

using namespace infodd;
using infodd::testing::cars_catalog;
using infodd::testing::cars_rows;
using infodd::testing::cars_table;

namespace {

std::shared_ptr<const TableSchema> binary_schema(std::size_t n, int m = 2) {
  return std::make_shared<const TableSchema>(TableSchema::anonymous(std::vector<int>(n, 2), m));
}

}  // namespace

TEST(Catalog, CarsExpandsToNineteenRows) {
  const DecisionTable t = cars_table();
  EXPECT_EQ(t.size(), 19u);
  EXPECT_EQ(t.schema().size(), 8u);
  EXPECT_EQ(t.schema().output_arity(), 8);
}

TEST(Catalog, CarsRowsMatchTranscribedTruthTable) {
  const DecisionTable t = cars_table();
  ASSERT_EQ(t.size(), cars_rows().size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::vector<int> row = t.rows()[i].values;
    row.push_back(t.rows()[i].output);
    EXPECT_EQ(row, cars_rows()[i]) << "row " << i;
  }
}

TEST(Catalog, AlternativeCellExpandsPerValue) {
  const Catalog cat = cars_catalog();
  // First entry: color cell {0,1,2,3}, everything else singleton.
  const auto rows = expand_entries(*cat.schema, {cat.entries.front()});
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].values[1], static_cast<int>(i));
    for (std::size_t v = 0; v < 8; ++v) {
      if (v != 1) EXPECT_EQ(rows[i].values[v], rows[0].values[v]);
    }
    EXPECT_EQ(rows[i].output, 0);
  }
}

TEST(Catalog, SingletonEntryIsOneRow) {
  const Catalog cat = cars_catalog();
  EXPECT_EQ(expand_entries(*cat.schema, {cat.entries[1]}).size(), 1u);
}

TEST(Catalog, ExpansionCountIsSumOfCellProducts) {
  const Catalog cat = cars_catalog();
  std::size_t expected = 0;
  for (const auto& e : cat.entries) {
    std::size_t prod = 1;
    for (const auto& c : e.cells) prod *= c.size();
    expected += prod;
  }
  EXPECT_EQ(expand_entries(*cat.schema, cat.entries).size(), expected);
}

TEST(Catalog, RejectsOutOfDomainValue) {
  const std::string doc = R"({"variables":[{"name":"a","labels":["0","1"]}],
    "products":[{"id":0,"label":"p"}], "entries":[{"product":0,"cells":[[2]]}]})";
  EXPECT_THROW(read_catalog(doc), DataError);
}

TEST(Catalog, RejectsMalformedAndEmptyCells) {
  EXPECT_THROW(read_catalog("{not json"), DataError);
  EXPECT_THROW(read_catalog(R"({"variables":[]})"), DataError);
  const std::string empty_cell = R"({"variables":[{"name":"a","labels":["0","1"]}],
    "products":[{"id":0,"label":"p"}], "entries":[{"product":0,"cells":[[]]}]})";
  EXPECT_THROW(read_catalog(empty_cell), DataError);
}

TEST(Catalog, StrictPolicyRejectsContradictions) {
  const std::string doc = R"({"variables":[{"name":"a","labels":["0","1"]}],
    "products":[{"id":0,"label":"p"},{"id":1,"label":"q"}],
    "entries":[{"product":0,"cells":[[0]]},{"product":1,"cells":[[0,1]]}]})";
  EXPECT_THROW(parse_catalog(doc), DataError);
  const DecisionTable t = parse_catalog(doc, ConsistencyPolicy::majority);
  EXPECT_EQ(t.size(), 3u);
}

TEST(Table, MajorityPolicyPicksMostFrequentOutput) {
  auto schema = binary_schema(1, 3);
  std::vector<Row> rows = {{{0}, 2}, {{0}, 1}, {{0}, 2}, {{1}, 0}};
  const DecisionTable t(schema, rows, ConsistencyPolicy::majority);
  for (const auto& r : t.rows()) {
    if (r.values[0] == 0) EXPECT_EQ(r.output, 2);
  }
  EXPECT_THROW(DecisionTable(schema, rows, ConsistencyPolicy::strict), DataError);
}

TEST(Table, DuplicateIdenticalRowsAreKept) {
  const DecisionTable t(binary_schema(1), {{{0}, 1}, {{0}, 1}});
  EXPECT_EQ(t.size(), 2u);
}

TEST(Table, EmptyIngestedTableIsRejected) { EXPECT_THROW(DecisionTable(binary_schema(2), {}), DataError); }

TEST(Table, RestrictSelectsMatchingRows) {
  const DecisionTable t = cars_table();
  const DecisionTable off_road = t.restrict(7, 1);
  ASSERT_EQ(off_road.size(), 4u);
  std::multiset<int> outputs;
  for (const auto& r : off_road.rows()) {
    EXPECT_EQ(r.values[7], 1);
    outputs.insert(r.output);
  }
  EXPECT_EQ(outputs, (std::multiset<int>{4, 4, 6, 6}));
  EXPECT_EQ(off_road.schema(), t.schema());
}

TEST(Table, RestrictOnAbsentValueIsEmptyCofactor) {
  const DecisionTable t(binary_schema(2), {{{0, 0}, 0}, {{0, 1}, 1}});
  const DecisionTable sub = t.restrict(0, 1);
  EXPECT_TRUE(sub.empty());
  EXPECT_TRUE(std::holds_alternative<EmptyTable>(sub.constant_value()));
}

TEST(Table, RestrictRejectsOutOfRange) {
  const DecisionTable t = cars_table();
  EXPECT_THROW(t.restrict(8, 0), std::out_of_range);
  EXPECT_THROW(t.restrict(0, 2), std::out_of_range);
}

TEST(Table, RestrictPartitionsEveryVariable) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const DecisionTable t = infodd::testing::random_table(rng, 4, 4, 3, 30);
    for (std::size_t v = 0; v < t.schema().size(); ++v) {
      std::size_t total = 0;
      for (int c = 0; c < t.schema().arity(v); ++c) {
        const DecisionTable sub = t.restrict(v, c);
        total += sub.size();
        // Every cofactor row is an unmodified row of t with the fixed value.
        for (const auto& r : sub.rows()) {
          EXPECT_EQ(r.values[v], c);
          EXPECT_NE(std::find(t.rows().begin(), t.rows().end(), r), t.rows().end());
        }
      }
      EXPECT_EQ(total, t.size());
    }
  }
}

TEST(Table, ConstantValue) {
  const DecisionTable t = cars_table();
  EXPECT_TRUE(std::holds_alternative<std::monostate>(t.constant_value()));
  // The Tourneo rows: catalyst controllable, price 25-30k.
  const DecisionTable tourneo = t.restrict(6, 2).restrict(0, 1);
  ASSERT_EQ(tourneo.size(), 4u);
  EXPECT_EQ(std::get<int>(tourneo.constant_value()), 0);
}

TEST(Csv, ParsesCarsTruthTable) {
  const Catalog cat = cars_catalog();
  std::ifstream in(infodd::testing::data_dir() / "cars.csv");
  const DecisionTable t = parse_table_csv(in, cat.schema);
  EXPECT_EQ(t.size(), 19u);
  EXPECT_EQ(t, cars_table());
}

TEST(Csv, SingleRow) {
  std::istringstream in("x_1,x_2,f\n0,0,0\n");
  const DecisionTable t = parse_table_csv(in, binary_schema(2));
  EXPECT_EQ(t.size(), 1u);
}

TEST(Csv, AcceptsSchemaNamesInAnyOrder) {
  const Catalog cat = cars_catalog();
  std::istringstream in("f,purpose,price,fuel,gear,interior,engine,color,catalyst\n7,2,0,0,1,1,1,0,0\n");
  const DecisionTable t = parse_table_csv(in, cat.schema);
  EXPECT_EQ(t.rows()[0].values, (std::vector<int>{0, 0, 1, 1, 1, 0, 0, 2}));
  EXPECT_EQ(t.rows()[0].output, 7);
}

TEST(Csv, Errors) {
  auto schema = binary_schema(2);
  std::istringstream wrong_header("x_1,y,f\n0,0,0\n");
  EXPECT_THROW(parse_table_csv(wrong_header, schema), DataError);
  std::istringstream non_integer("x_1,x_2,f\n0,a,0\n");
  EXPECT_THROW(parse_table_csv(non_integer, schema), DataError);
  std::istringstream domain("x_1,x_2,f\n4,0,0\n");
  EXPECT_THROW(parse_table_csv(domain, schema), DataError);
  std::istringstream empty("x_1,x_2,f\n");
  EXPECT_THROW(parse_table_csv(empty, schema), DataError);
}

TEST(Csv, RoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const DecisionTable t = infodd::testing::random_table(rng, 1 + trial % 6, 4, 4, 1 + trial % 25);
    std::stringstream buf;
    write_table_csv(buf, t);
    EXPECT_EQ(parse_table_csv(buf, t.schema_ptr()), t);
  }
}

TEST(Monks, TestSetsHave432Rows) {
  for (int p = 1; p <= 3; ++p) {
    const DecisionTable t = infodd::testing::monks_test_table(p);
    EXPECT_EQ(t.size(), 432u);
    EXPECT_EQ(t.schema().size(), 6u);
    EXPECT_EQ(t.schema().output_arity(), 2);
  }
}

TEST(Monks, ValuesAreStoredZeroBased) {
  std::istringstream in(" 1 1 1 1 1 3 1 data_5\n 0 3 3 2 3 4 2 data_432\n");
  const DecisionTable t = parse_monks(in);
  EXPECT_EQ(t.rows()[0].values, (std::vector<int>{0, 0, 0, 0, 2, 0}));
  EXPECT_EQ(t.rows()[1].values, (std::vector<int>{2, 2, 1, 2, 3, 1}));
  EXPECT_EQ(t.rows()[1].output, 0);
}

TEST(Monks, Errors) {
  std::istringstream empty("");
  EXPECT_THROW(parse_monks(empty), DataError);
  std::istringstream short_line(" 1 1 1 1 data_1\n");
  EXPECT_THROW(parse_monks(short_line), DataError);
  std::istringstream bad_value(" 1 1 1 3 1 1 1 data_1\n");
  EXPECT_THROW(parse_monks(bad_value), DataError);
}

TEST(Schema, PaddingWidensVariables) {
  const DecisionTable padded = pad_arity(infodd::testing::monks_test_table(1), 4);
  for (const auto& v : padded.schema().variables) EXPECT_EQ(v.arity(), 4);
  EXPECT_EQ(padded.size(), 432u);
}

TEST(Schema, ValidateRejectsDuplicatesAndUnary) {
  TableSchema s = TableSchema::anonymous({2, 2}, 2);
  s.variables[1].name = s.variables[0].name;
  EXPECT_THROW(s.validate(), DataError);
  TableSchema u = TableSchema::anonymous({1}, 2);
  EXPECT_THROW(u.validate(), DataError);
}

#include "entcap/coding.hpp"
#include "entcap/error.hpp"
#include "entcap/fixtures.hpp"
#include "entcap/mincut.hpp"
#include "entcap/network_json.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

using namespace entcap;

namespace {

const std::string kDir = ENTCAP_FIXTURE_DIR;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in.good()) << path;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Fixtures, FilesMatchCatalogByteForByte) {
  for (const auto& f : fixture_catalog()) {
    const std::string text = slurp(kDir + "/" + f.name + ".json");
    EXPECT_EQ(text, dump_network(f.network)) << f.name;
    EXPECT_EQ(dump_network(parse_network(text)), text) << f.name;
  }
}

TEST(Fixtures, ProtocolFilesMatch) {
  EXPECT_EQ(protocol_from_json(Json::parse(slurp(kDir + "/split_n4_protocol.json"))), split_n4_protocol());
  EXPECT_EQ(protocol_from_json(Json::parse(slurp(kDir + "/oriented_n2_protocol.json"))), oriented_n2_protocol());
  EXPECT_TRUE(is_valid(load_network(kDir + "/n4_split_2_2.json"), protocol_from_json(Json::parse(slurp(kDir + "/split_n4_protocol.json")))));
}

TEST(Fixtures, AllValidAndNamed) {
  std::set<std::string> names;
  for (const auto& f : fixture_catalog()) {
    EXPECT_TRUE(validate(f.network).empty()) << f.name;
    EXPECT_TRUE(names.insert(f.name).second) << f.name;
    if (f.known_r1) EXPECT_LE(BigInt(*f.known_r1), min_cut(f.network).value) << f.name;
  }
  EXPECT_THROW(fixture("missing"), InvalidInput);
}

TEST(Fixtures, RelayDimensions) {
  const Network& n = fixture("n_d5_7").network;
  const std::vector<Dim> want{2, 3, 3, 2, 7};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(n.edges[i].dim, want[i]);
}

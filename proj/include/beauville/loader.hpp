#pragma once

// Group-definition files:
//   {"name", "expected_order"?, "kind": "permutation"|"matrix",
//    "degree" | {"p","e","dim"} (top level or under "field"),
//    "projective"?, "generators": [cycle strings | row-major code arrays],
//    "provenance"?, "out_order"?}
// Matrix entries are field codes c_0 + c_1 p + ...; for prime fields
// negative integers are reduced mod p.

#include <fstream>
#include <sstream>

#include "beauville/group.hpp"

namespace beauville {

struct GroupDefinition {
  GroupPtr group;
  std::optional<std::uint64_t> out_order;  // declared |Out H|, unverified metadata
};

inline GroupDefinition load_group_json(const json& doc, const std::string& source, std::size_t cap = kDefaultGroupCap) {
  try {
    require(doc.is_object(), Errc::ParseError, "group definition must be an object");
    const std::string name = doc.value("name", std::string("unnamed"));
    const std::string kind_name = doc.at("kind").get<std::string>();
    const auto& gens_json = doc.at("generators");
    require(gens_json.is_array(), Errc::ParseError, "generators must be an array");

    KindPtr kind;
    std::vector<std::vector<index_t>> gens;
    if (kind_name == "permutation") {
      const std::size_t degree = doc.at("degree").get<std::size_t>();
      kind = std::make_shared<PermutationKind>(degree);
      for (const auto& g : gens_json) gens.push_back(parse_cycles(g.get<std::string>(), degree));
    } else if (kind_name == "matrix") {
      const json& fj = doc.contains("field") ? doc.at("field") : doc;
      const auto p = fj.at("p").get<std::uint32_t>();
      const auto e = fj.value("e", 1u);
      const auto dim = fj.contains("dim") ? fj.at("dim").get<std::size_t>() : doc.at("dim").get<std::size_t>();
      auto f = field_create(p, e);
      kind = std::make_shared<MatrixKind>(f, dim, doc.value("projective", true));
      for (const auto& g : gens_json) {
        require(g.is_array() && g.size() == dim * dim, Errc::ParseError,
                "matrix generator must have " + std::to_string(dim * dim) + " entries");
        std::vector<index_t> m;
        for (const auto& v : g) {
          const auto x = v.get<std::int64_t>();
          if (e == 1) {
            m.push_back(f->from_int(x));
          } else {
            require(x >= 0 && x < std::int64_t(f->q()), Errc::ParseError, "field code out of range");
            m.push_back(static_cast<index_t>(x));
          }
        }
        auto mk = std::static_pointer_cast<const MatrixKind>(kind);
        require(mk->determinant(m.data()) != 0, Errc::ParseError, "singular matrix generator");
        gens.push_back(std::move(m));
      }
    } else {
      fail(Errc::ParseError, "unknown kind '" + kind_name + "'");
    }

    Provenance prov{name, "file", json::object(), source, doc.value("provenance", std::string())};
    if (doc.contains("expected_order")) prov.params["expected_order"] = doc.at("expected_order");
    GroupDefinition out;
    out.group = closure(kind, gens, cap, prov);
    if (doc.contains("expected_order")) {
      const auto expected = doc.at("expected_order").get<std::uint64_t>();
      require(out.group->order() == expected, Errc::OrderMismatch,
              name + ": closure has order " + std::to_string(out.group->order()) + ", declared " +
                  std::to_string(expected));
    }
    if (doc.contains("out_order")) out.out_order = doc.at("out_order").get<std::uint64_t>();
    return out;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, source + ": " + e.what());
  }
}

inline GroupDefinition load_group(const std::string& path, std::size_t cap = kDefaultGroupCap) {
  std::ifstream in(path);
  require(in.good(), Errc::ParseError, "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
  return load_group_json(doc, path, cap);
}

}  // namespace beauville

#pragma once

// Quiver description documents (UTF-8 JSON). Format:
//   field:      {"kind":"rational"} | {"kind":"prime","p":<prime>}
//   vertices:   ["1","2",...]
//   arrows:     [{"name":"alpha","src":"1","tgt":"2"}, ...]
//   relations:  [[{"coeff":"1","path":["alpha","beta"]}, ...], ...]
//   cap:        optional completion degree cap (default 12)
//   orientation: optional {"e":[...],"e1":[...],"e2":[...]}

#include "quivhom/algebra.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace quivhom {

struct FieldSpec {
  bool rational = true;
  uint64_t p = 0;
};

struct OrientationSpec {
  std::vector<std::string> e, e1, e2;
};

struct QuiverDoc {
  FieldSpec field;
  Quiver quiver;
  std::vector<std::vector<std::pair<Rat, std::vector<std::string>>>> relations;
  int cap = 12;
  std::optional<OrientationSpec> orientation;
  std::string raw;  // original text, for digests
};

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline QuiverDoc parse_quiver_doc(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw validation_error(std::string("malformed document: ") + e.what());
  }
  QuiverDoc doc;
  doc.raw = text;
  try {
    if (j.contains("field")) {
      auto f = j.at("field");
      std::string kind = f.at("kind").get<std::string>();
      if (kind == "rational") {
        doc.field.rational = true;
      } else if (kind == "prime") {
        doc.field.rational = false;
        doc.field.p = f.at("p").get<uint64_t>();
        if (!is_prime_u64(doc.field.p))
          throw validation_error("field characteristic is not prime");
        if (doc.field.p >= (1ull << 31))
          throw validation_error("prime too large");
      } else {
        throw validation_error("unknown field kind: " + kind);
      }
    }
    for (auto& v : j.at("vertices")) doc.quiver.vertices.push_back(v.get<std::string>());
    if (j.contains("arrows"))
      for (auto& a : j.at("arrows")) {
        Arrow ar;
        ar.name = a.at("name").get<std::string>();
        ar.src = doc.quiver.vertex_index(a.at("src").get<std::string>());
        ar.tgt = doc.quiver.vertex_index(a.at("tgt").get<std::string>());
        doc.quiver.arrows.push_back(ar);
      }
    doc.quiver.validate();
    if (j.contains("relations"))
      for (auto& rel : j.at("relations")) {
        std::vector<std::pair<Rat, std::vector<std::string>>> terms;
        for (auto& term : rel) {
          Rat c = parse_rational(term.at("coeff").get<std::string>());
          std::vector<std::string> path;
          for (auto& an : term.at("path")) path.push_back(an.get<std::string>());
          terms.emplace_back(c, path);
        }
        doc.relations.push_back(std::move(terms));
      }
    if (j.contains("cap")) doc.cap = j.at("cap").get<int>();
    if (j.contains("orientation")) {
      OrientationSpec o;
      for (auto& s : j.at("orientation").at("e")) o.e.push_back(s.get<std::string>());
      for (auto& s : j.at("orientation").at("e1")) o.e1.push_back(s.get<std::string>());
      for (auto& s : j.at("orientation").at("e2")) o.e2.push_back(s.get<std::string>());
      doc.orientation = o;
    }
  } catch (const validation_error&) {
    throw;
  } catch (const std::exception& e) {
    throw validation_error(std::string("malformed document: ") + e.what());
  }
  return doc;
}

inline QuiverDoc load_quiver_doc(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw validation_error("cannot open document: " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_quiver_doc(ss.str());
}

// relations as elements over the document's field, validated
template <class K>
std::vector<Element<K>> doc_relations(const QuiverDoc& doc, const K& one) {
  std::vector<Element<K>> out;
  for (auto& rel : doc.relations) {
    Element<K> e;
    for (auto& [coeff, names] : rel) {
      if (names.size() < 2)
        throw validation_error("relation path of length < 2 (ideal must sit inside the arrow ideal squared)");
      Path p;
      for (auto& nm : names) {
        int ai = doc.quiver.arrow_index(nm);
        if (p.arrows.empty()) {
          p.src = doc.quiver.arrows[ai].src;
        } else if (p.tgt != doc.quiver.arrows[ai].src) {
          throw validation_error("relation path does not compose: " + nm);
        }
        p.arrows.push_back(ai);
        p.tgt = doc.quiver.arrows[ai].tgt;
      }
      K c;
      if constexpr (std::is_same_v<K, Rat>) c = coeff;
      else c = rat_to_fp(coeff, one.p);
      if (field<K>::is_zero(c)) throw validation_error("zero coefficient in relation");
      elem_add(e, p, c);
    }
    if (!elem_homogeneous(e))
      throw validation_error("relation mixes non-parallel paths");
    if (!e.empty()) out.push_back(std::move(e));
  }
  return out;
}

template <class K>
Algebra<K> algebra_from_doc(const QuiverDoc& doc, const K& one) {
  auto rels = doc_relations<K>(doc, one);
  auto rs = complete_rewriting(doc.quiver, rels, doc.cap);
  return Algebra<K>(doc.quiver, rs, one);
}

inline Algebra<Rat> rational_algebra_from_doc(const QuiverDoc& doc) {
  return algebra_from_doc<Rat>(doc, Rat(1));
}

inline IdempotentSet vertex_set(const Quiver& q, const std::vector<std::string>& ids) {
  IdempotentSet s;
  for (auto& id : ids) s.push_back(q.vertex_index(id));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace quivhom

#pragma once

// Completion of quiver relations into a confluent rewriting system, and
// normal forms. Rules rewrite a leading path into a combination of strictly
// smaller paths in the degree-lex order, so every reduction terminates; the
// admissibility bound m is detected as the smallest length with no
// irreducible path.

#include "quivhom/quiver.hpp"

#include <algorithm>
#include <deque>
#include <vector>

namespace quivhom {

template <class K>
struct Rule {
  Path lead;
  Element<K> rhs;  // equal to lead modulo the ideal, every term < lead
};

template <class K>
struct ReductionSystem {
  std::vector<Rule<K>> rules;
  int nil_bound = 1;  // smallest m with no irreducible path of length m

  // does `lead` occur as a subword of p? returns first position or -1
  static int find_subword(const Path& p, const Path& lead) {
    int n = p.length(), m = lead.length();
    for (int i = 0; i + m <= n; ++i) {
      bool ok = true;
      for (int j = 0; j < m; ++j)
        if (p.arrows[i + j] != lead.arrows[j]) { ok = false; break; }
      if (ok) return i;
    }
    return -1;
  }

  bool reducible(const Path& p) const {
    for (const auto& r : rules)
      if (find_subword(p, r.lead) >= 0) return true;
    return false;
  }

  // one rewriting step at the leftmost match of the first applicable rule;
  // returns false if p is irreducible
  bool step(const Path& p, Element<K>& out, const Quiver& qv) const {
    int best_pos = -1, best_rule = -1;
    for (int ri = 0; ri < (int)rules.size(); ++ri) {
      int pos = find_subword(p, rules[ri].lead);
      if (pos < 0) continue;
      if (best_pos < 0 || pos < best_pos) { best_pos = pos; best_rule = ri; }
    }
    if (best_rule < 0) return false;
    const Rule<K>& r = rules[best_rule];
    Path prefix{p.src, best_pos ? qv.arrows[p.arrows[best_pos - 1]].tgt : p.src, {}};
    prefix.arrows.assign(p.arrows.begin(), p.arrows.begin() + best_pos);
    prefix.tgt = best_pos ? qv.arrows[p.arrows[best_pos - 1]].tgt : p.src;
    int suf_from = best_pos + r.lead.length();
    Path suffix{r.lead.tgt, p.tgt, {}};
    suffix.arrows.assign(p.arrows.begin() + suf_from, p.arrows.end());
    out.clear();
    for (auto& [w, c] : r.rhs) elem_add(out, prefix.concat(w).concat(suffix), c);
    return true;
  }

  Element<K> normal_form(const Element<K>& e, const Quiver& qv) const {
    Element<K> cur = e;
    while (true) {
      // rewrite the largest reducible term
      bool done = true;
      for (auto it = cur.rbegin(); it != cur.rend(); ++it) {
        Element<K> repl;
        if (step(it->first, repl, qv)) {
          K c = it->second;
          cur.erase(std::next(it).base());
          elem_add_scaled(cur, repl, c);
          done = false;
          break;
        }
      }
      if (done) return cur;
    }
  }

  Element<K> normal_form_path(const Path& p, const Quiver& qv, const K& one) const {
    Element<K> e;
    elem_add(e, p, one);
    return normal_form(e, qv);
  }
};

namespace detail {

template <class K>
Element<K> scaled(const Element<K>& e, const K& c) {
  Element<K> out;
  for (auto& [p, v] : e) elem_add(out, p, v * c);
  return out;
}

template <class K>
Element<K> mult_path_elem(const Path& u, const Element<K>& e, const Path& v) {
  Element<K> out;
  for (auto& [p, c] : e) elem_add(out, u.concat(p).concat(v), c);
  return out;
}

}  // namespace detail

template <class K>
ReductionSystem<K> complete_rewriting(const Quiver& qv,
                                      const std::vector<Element<K>>& relations,
                                      int cap) {
  if (cap < 2) throw validation_error("cap must be at least 2");
  ReductionSystem<K> rs;
  std::deque<Element<K>> queue(relations.begin(), relations.end());
  PathLess less;

  auto enqueue_overlaps = [&](const Rule<K>& a, const Rule<K>& b) {
    // proper overlaps: a.lead = u c, b.lead = c v with u, c, v all nonempty
    // (inclusions cannot occur: new leads are in normal form and old rules
    // containing a new lead get retired)
    int la = a.lead.length(), lb = b.lead.length();
    for (int ov = 1; ov < std::min(la, lb); ++ov) {
      bool match = true;
      for (int j = 0; j < ov; ++j)
        if (a.lead.arrows[la - ov + j] != b.lead.arrows[j]) { match = false; break; }
      if (!match) continue;
      int wlen = la + lb - ov;
      if (wlen > 4 * cap) throw budget_error("completion diverges within cap");
      // ambiguity word w = a.lead * tail(b) = head(a) * b.lead
      Path tail{a.lead.tgt, b.lead.tgt, {}};
      tail.arrows.assign(b.lead.arrows.begin() + ov, b.lead.arrows.end());
      Path head{a.lead.src, b.lead.src, {}};
      head.arrows.assign(a.lead.arrows.begin(), a.lead.arrows.end() - ov);
      Element<K> s = detail::mult_path_elem(Path::stationary(a.lead.src), a.rhs, tail);
      Element<K> t = detail::mult_path_elem(head, b.rhs, Path::stationary(b.lead.tgt));
      Element<K> diff = s;
      for (auto& [p, c] : t) elem_add(diff, p, field<K>::neg(c));
      if (!diff.empty()) queue.push_back(diff);
    }
  };

  size_t safety = 0;
  while (!queue.empty()) {
    if (++safety > 100000) throw budget_error("completion diverges within cap");
    Element<K> e = rs.normal_form(queue.front(), qv);
    queue.pop_front();
    if (e.empty()) continue;
    // leading term = largest path
    auto lead_it = std::prev(e.end());
    Path lead = lead_it->first;
    if (lead.length() < 2)
      throw validation_error("relation ideal escapes the square of the arrow ideal");
    if (lead.length() > cap) throw budget_error("completion exceeds degree cap");
    K lc_inv = field<K>::inv(lead_it->second);
    Element<K> rhs;
    for (auto& [p, c] : e)
      if (!(p == lead)) elem_add(rhs, p, field<K>::neg(c * lc_inv));
    Rule<K> rule{lead, rhs};

    // retire any rule whose lead contains the new lead; requeue it as an element
    std::vector<Rule<K>> kept;
    for (auto& r : rs.rules) {
      if (ReductionSystem<K>::find_subword(r.lead, lead) >= 0) {
        Element<K> as_elem = r.rhs;
        elem_add(as_elem, r.lead, field<K>::neg(field<K>::one(lead_it->second)));
        queue.push_back(as_elem);
      } else {
        kept.push_back(r);
      }
    }
    rs.rules = std::move(kept);
    rs.rules.push_back(rule);
    std::sort(rs.rules.begin(), rs.rules.end(),
              [&](const Rule<K>& x, const Rule<K>& y) { return less(x.lead, y.lead); });

    for (auto& r : rs.rules) {
      enqueue_overlaps(r, rule);
      if (!(r.lead == rule.lead)) enqueue_overlaps(rule, r);
    }
  }

  // normalize right-hand sides against the final system
  for (auto& r : rs.rules) r.rhs = rs.normal_form(r.rhs, qv);

  // nilpotency bound: smallest L <= cap with no irreducible path of length L
  std::vector<Path> frontier;
  for (int v = 0; v < qv.n_vertices(); ++v) frontier.push_back(Path::stationary(v));
  int m = -1;
  for (int len = 1; len <= cap + 1; ++len) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      for (int ai = 0; ai < qv.n_arrows(); ++ai) {
        if (qv.arrows[ai].src != p.tgt) continue;
        Path ext = p;
        ext.arrows.push_back(ai);
        ext.tgt = qv.arrows[ai].tgt;
        // a new reducible subword must end at the new last arrow
        bool red = false;
        for (const auto& r : rs.rules) {
          int lr = r.lead.length();
          if (lr > ext.length()) continue;
          bool suffix = true;
          for (int j = 0; j < lr; ++j)
            if (ext.arrows[ext.length() - lr + j] != r.lead.arrows[j]) { suffix = false; break; }
          if (suffix) { red = true; break; }
        }
        if (!red) next.push_back(ext);
      }
    }
    if (next.empty()) { m = len; break; }
    frontier = std::move(next);
  }
  if (m < 0)
    throw budget_error("no nilpotency bound within cap; ideal may not be admissible");
  rs.nil_bound = m;
  return rs;
}

}  // namespace quivhom

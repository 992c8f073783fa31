#include <algorithm>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <bqf/bqf.hpp>

namespace {

using bqf::ClassSet;
using bqf::Discriminant;
using bqf::Form;
using bqf::Int;
using bqf::LiftIndex;
using bqf::Mat2;
using nlohmann::json;

/* exit code contract: 0 success/true, 1 mathematical false, 2 parse error,
 * 3 violated precondition */
constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitInternal = 4;

std::string int_str(const Int& v) {
  return v.str();
}

/* coefficients are emitted as decimal strings so arbitrarily large values
 * survive JSON round trips */
json form_json(const Form& q) {
  return json::array({int_str(q.a()), int_str(q.b()), int_str(q.c())});
}

json mat_json(const Mat2& m) {
  return json::array({json::array({int_str(m.p), int_str(m.r)}),
                      json::array({int_str(m.s), int_str(m.t)})});
}

void emit(const json& j) {
  std::cout << j.dump() << "\n";
}

int cmd_disc(const std::string& literal, bool as_json) {
  Form q = bqf::parse_form(literal);
  Discriminant d = q.discriminant();
  if (as_json)
    emit({{"form", form_json(q)}, {"discriminant", int_str(d.value())}});
  else
    std::cout << d.value() << "\n";
  return kExitTrue;
}

int cmd_reduce(const std::string& literal, bool as_json) {
  Form q = bqf::parse_form(literal);
  bqf::Reduction red = bqf::reduce(q);
  if (as_json)
    emit({{"input", form_json(q)},
          {"reduced", form_json(red.form.form())},
          {"witness", mat_json(red.witness.matrix())}});
  else
    std::cout << red.form << "\n" << red.witness.matrix() << "\n";
  return kExitTrue;
}

int cmd_equiv(const std::string& lit1, const std::string& lit2, bool as_json) {
  Form q1 = bqf::parse_form(lit1);
  Form q2 = bqf::parse_form(lit2);
  auto witness = bqf::equivalent(q1, q2);
  if (as_json) {
    json j{{"equivalent", witness.has_value()}};
    if (witness) j["witness"] = mat_json(witness->matrix());
    emit(j);
  } else if (witness) {
    std::cout << witness->matrix() << "\n";
  } else {
    std::cout << "inequivalent" << "\n";
  }
  return witness ? kExitTrue : kExitFalse;
}

int cmd_classgroup(const std::string& disc_text, bool as_json) {
  Discriminant d(bqf::parse_integer(disc_text));
  ClassSet cs = bqf::class_set(d);
  if (as_json) {
    json forms = json::array();
    for (const auto& m : cs) forms.push_back(form_json(m.form()));
    emit({{"discriminant", int_str(d.value())},
          {"forms", forms},
          {"count", cs.size()}});
  } else {
    for (const auto& m : cs) std::cout << m << "\n";
    std::cout << "count " << cs.size() << "\n";
  }
  return kExitTrue;
}

int cmd_lift(const std::string& literal, const std::string& f_text,
             const std::string& g_text, bool as_json) {
  Form q = bqf::parse_form(literal);
  Int f = bqf::parse_integer(f_text);
  LiftIndex idx(bqf::parse_integer(g_text), f);
  Form lifted = bqf::lift_g(q, idx);
  if (as_json)
    emit({{"form", form_json(q)},
          {"conductor", int_str(f)},
          {"index", int_str(idx.g())},
          {"lift", form_json(lifted)}});
  else
    std::cout << lifted << "\n";
  return kExitTrue;
}

int cmd_lifts(const std::string& literal, const std::string& f_text,
              bool as_json) {
  Form q = bqf::parse_form(literal);
  Int f = bqf::parse_integer(f_text);
  auto indices = bqf::primitive_lift_indices(q, f);
  if (as_json) {
    json lifts = json::array();
    for (const auto& idx : indices)
      lifts.push_back({{"index", int_str(idx.g())},
                       {"form", form_json(bqf::lift_g(q, idx))}});
    emit({{"form", form_json(q)},
          {"conductor", int_str(f)},
          {"lifts", lifts},
          {"count", lifts.size()}});
  } else {
    for (const auto& idx : indices)
      std::cout << idx.g() << " " << bqf::lift_g(q, idx) << "\n";
    std::cout << "count " << indices.size() << "\n";
  }
  return kExitTrue;
}

int cmd_descend(const std::string& literal, const std::string& f_text,
                bool as_json) {
  Form big = bqf::parse_form(literal);
  Int f = bqf::parse_integer(f_text);
  bqf::DescentResult res = bqf::descend(big, f);
  if (as_json)
    emit({{"form", form_json(big)},
          {"conductor", int_str(f)},
          {"base", form_json(res.base.form())},
          {"matrix", mat_json(res.lift_matrix)}});
  else
    std::cout << res.base << "\n" << res.lift_matrix << "\n";
  return kExitTrue;
}

int cmd_semiequiv(const std::string& lit1, const std::string& lit2,
                  const std::string& f_text, bool as_json) {
  Form q1 = bqf::parse_form(lit1);
  Form q2 = bqf::parse_form(lit2);
  Int f = bqf::parse_integer(f_text);
  bool same = bqf::semi_equivalent(q1, q2, f);
  if (as_json)
    emit({{"semi_equivalent", same}});
  else
    std::cout << (same ? "semi-equivalent" : "not semi-equivalent") << "\n";
  return same ? kExitTrue : kExitFalse;
}

int cmd_fiber(const std::string& literal, const std::string& f_text,
              bool as_json) {
  Form q = bqf::parse_form(literal);
  Int f = bqf::parse_integer(f_text);
  auto classes = bqf::fiber(q, f);
  if (as_json) {
    json arr = json::array();
    for (const auto& fc : classes) {
      json indices = json::array();
      for (const auto& idx : fc.indices) indices.push_back(int_str(idx.g()));
      arr.push_back({{"form", form_json(fc.representative.form())},
                     {"indices", indices}});
    }
    emit({{"form", form_json(q)},
          {"conductor", int_str(f)},
          {"classes", arr},
          {"count", classes.size()}});
  } else {
    for (const auto& fc : classes) {
      std::cout << fc.representative;
      for (const auto& idx : fc.indices) std::cout << " " << idx.g();
      std::cout << "\n";
    }
    std::cout << "count " << classes.size() << "\n";
  }
  return kExitTrue;
}

/* ------------------------------------------------------------------ */
/* selftest: sweep the oracle against the main code paths             */

struct CheckRow {
  std::string name;
  std::string detail;
  long cases = 0;
  bool passed = true;
  std::string note;
};

std::vector<Int> valid_discriminants(const Int& dmin, const Int& dmax) {
  std::vector<Int> out;
  for (Int d = dmin; d <= dmax; ++d) {
    Int r = bqf::mod_floor(d, 4);
    if (r == 0 || r == 1) out.push_back(d);
  }
  return out;
}

CheckRow check_class_counts(const std::vector<Int>& discs) {
  CheckRow row{"class-counts", "", 0, true, ""};
  for (const Int& d : discs) {
    Discriminant disc(d);
    ++row.cases;
    Int expected = bqf::oracle::exhaustive_class_count(disc);
    if (Int(bqf::class_set(disc).size()) != expected) {
      row.passed = false;
      row.note = "mismatch at D = " + int_str(d);
      return row;
    }
  }
  return row;
}

CheckRow check_surjectivity(const std::vector<Int>& discs,
                            const std::vector<Int>& primes) {
  CheckRow row{"descent-surjective", "", 0, true, ""};
  for (const Int& d : discs) {
    Discriminant disc(d);
    if (!bqf::is_fundamental(disc)) continue;
    for (const Int& f : primes) {
      ++row.cases;
      ClassSet upstairs = bqf::class_set(Discriminant(d * f * f));
      ClassSet downstairs = bqf::class_set(disc);
      std::set<Form> bases;
      for (const auto& q : upstairs)
        bases.insert(bqf::descend(q.form(), f).base.form());
      std::set<Form> expected;
      for (const auto& q : downstairs) expected.insert(q.form());
      if (bases != expected) {
        row.passed = false;
        row.note = "image mismatch at D = " + int_str(d) + ", f = " + int_str(f);
        return row;
      }
    }
  }
  return row;
}

CheckRow check_fiber_sizes(const std::vector<Int>& discs,
                           const std::vector<Int>& primes) {
  CheckRow row{"fiber-cardinality", "", 0, true, ""};
  for (const Int& d : discs) {
    if (d >= -4) continue;
    Discriminant disc(d);
    if (!bqf::is_fundamental(disc)) continue;
    for (const Int& f : primes) {
      ++row.cases;
      std::size_t total = 0;
      Int expected_size = f - bqf::kronecker(d, f);
      for (const auto& q : bqf::class_set(disc)) {
        Form coprime = bqf::normalize_coprime(q.form(), f).form;
        auto classes = bqf::fiber(coprime, f);
        total += classes.size();
        if (Int(classes.size()) != expected_size) {
          row.passed = false;
          row.note = "fiber size mismatch at D = " + int_str(d) +
                     ", f = " + int_str(f);
          return row;
        }
      }
      if (total != bqf::class_set(Discriminant(d * f * f)).size()) {
        row.passed = false;
        row.note = "fiber sum mismatch at D = " + int_str(d) +
                   ", f = " + int_str(f);
        return row;
      }
    }
  }
  return row;
}

CheckRow check_fiber_oracle(const std::vector<Int>& discs,
                            const std::vector<Int>& primes) {
  CheckRow row{"fiber-oracle", "", 0, true, ""};
  for (const Int& d : discs) {
    if (d < -40) continue;  /* orbit searches get slow below this */
    Discriminant disc(d);
    if (!bqf::is_fundamental(disc)) continue;
    for (const Int& f : primes) {
      for (const auto& q : bqf::class_set(disc)) {
        ++row.cases;
        Form coprime = bqf::normalize_coprime(q.form(), f).form;
        auto fast = bqf::fiber(coprime, f);
        auto slow = bqf::oracle::exhaustive_fiber_check(coprime, f);
        if (!slow.conclusive) {
          row.passed = false;
          row.note = "inconclusive orbit search at D = " + int_str(d) +
                     ", f = " + int_str(f) + " (raise the budget)";
          return row;
        }
        auto canon = [](std::vector<std::vector<Int>> groups) {
          for (auto& g : groups) std::sort(g.begin(), g.end());
          std::sort(groups.begin(), groups.end());
          return groups;
        };
        std::vector<std::vector<Int>> mine;
        for (const auto& fc : fast) {
          std::vector<Int> g;
          for (const auto& idx : fc.indices) g.push_back(idx.g());
          mine.push_back(std::move(g));
        }
        if (canon(mine) != canon(slow.groups)) {
          row.passed = false;
          row.note = "grouping mismatch at D = " + int_str(d) +
                     ", f = " + int_str(f);
          return row;
        }
      }
    }
  }
  return row;
}

int cmd_selftest(const std::string& dmin_text, const std::string& dmax_text,
                 const std::string& primes_text, bool as_json) {
  Int dmin = bqf::parse_integer(dmin_text);
  Int dmax = bqf::parse_integer(dmax_text);
  if (dmin > dmax || dmax > -3)
    throw bqf::precondition_error("selftest range must satisfy dmin <= dmax <= -3");
  std::vector<Int> primes;
  std::stringstream ss(primes_text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    Int f = bqf::parse_integer(tok);
    if (!bqf::is_odd_prime(f))
      throw bqf::precondition_error("conductor must be an odd prime");
    primes.push_back(f);
  }
  if (primes.empty()) throw bqf::parse_error("empty prime list");

  std::vector<Int> discs = valid_discriminants(dmin, dmax);
  std::ostringstream range;
  range << "D in [" << dmin << ", " << dmax << "]";
  std::ostringstream with_primes;
  with_primes << range.str() << ", f in {" << primes_text << "}";

  std::vector<CheckRow> rows;
  rows.push_back(check_class_counts(discs));
  rows.back().detail = range.str();
  rows.push_back(check_surjectivity(discs, primes));
  rows.back().detail = with_primes.str();
  rows.push_back(check_fiber_sizes(discs, primes));
  rows.back().detail = with_primes.str();
  rows.push_back(check_fiber_oracle(discs, primes));
  rows.back().detail = with_primes.str();

  bool all = true;
  if (as_json) {
    json checks = json::array();
    for (const auto& row : rows) {
      all = all && row.passed;
      checks.push_back({{"name", row.name},
                        {"detail", row.detail},
                        {"cases", row.cases},
                        {"passed", row.passed},
                        {"note", row.note}});
    }
    emit({{"checks", checks}, {"passed", all}});
  } else {
    for (const auto& row : rows) {
      all = all && row.passed;
      std::cout << (row.passed ? "PASS" : "FAIL") << "  " << row.name << "  "
                << row.detail << "  (" << row.cases << " cases)";
      if (!row.note.empty()) std::cout << "  " << row.note;
      std::cout << "\n";
    }
    std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return all ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"integer binary quadratic forms under nested discriminants"};
  app.require_subcommand(1);

  std::string lit1, lit2, f_text, g_text, disc_text;
  std::string dmin_text = "-100", dmax_text = "-3", primes_text = "3,5";
  bool as_json = false;

  auto add_json = [&](CLI::App* sub) {
    sub->add_flag("--json", as_json, "machine-readable output");
  };

  auto* c_disc = app.add_subcommand("disc", "print the discriminant of a form");
  c_disc->add_option("form", lit1, "form literal \"(a,b,c)\"")->required();
  add_json(c_disc);

  auto* c_reduce =
      app.add_subcommand("reduce", "reduce a positive definite form");
  c_reduce->add_option("form", lit1, "form literal")->required();
  add_json(c_reduce);

  auto* c_equiv =
      app.add_subcommand("equiv", "witness of proper equivalence, if any");
  c_equiv->add_option("form1", lit1, "form literal")->required();
  c_equiv->add_option("form2", lit2, "form literal")->required();
  add_json(c_equiv);

  auto* c_classgroup =
      app.add_subcommand("classgroup", "reduced primitive forms of a negative discriminant");
  c_classgroup->add_option("D", disc_text, "discriminant (negative integer)")
      ->required();
  add_json(c_classgroup);

  auto* c_lift = app.add_subcommand("lift", "lift a form at one index");
  c_lift->add_option("form", lit1, "form literal")->required();
  c_lift->add_option("f", f_text, "odd prime conductor")->required();
  c_lift->add_option("g", g_text, "lift index in [0, f]")->required();
  add_json(c_lift);

  auto* c_lifts =
      app.add_subcommand("lifts", "all primitive lift indices and lifts");
  c_lifts->add_option("form", lit1, "form literal")->required();
  c_lifts->add_option("f", f_text, "odd prime conductor")->required();
  add_json(c_lifts);

  auto* c_descend =
      app.add_subcommand("descend", "base form of discriminant disc/f²");
  c_descend->add_option("form", lit1, "form literal of discriminant D·f²")
      ->required();
  c_descend->add_option("f", f_text, "odd prime conductor")->required();
  add_json(c_descend);

  auto* c_semiequiv =
      app.add_subcommand("semiequiv", "decide semi-equivalence");
  c_semiequiv->add_option("form1", lit1, "form literal")->required();
  c_semiequiv->add_option("form2", lit2, "form literal")->required();
  c_semiequiv->add_option("f", f_text, "odd prime conductor")->required();
  add_json(c_semiequiv);

  auto* c_fiber =
      app.add_subcommand("fiber", "classes over a class, with their indices");
  c_fiber->add_option("form", lit1, "form literal")->required();
  c_fiber->add_option("f", f_text, "odd prime conductor")->required();
  add_json(c_fiber);

  auto* c_selftest =
      app.add_subcommand("selftest", "sweep the brute-force oracle");
  c_selftest->add_option("--dmin", dmin_text, "lower discriminant bound");
  c_selftest->add_option("--dmax", dmax_text, "upper discriminant bound");
  c_selftest->add_option("--primes", primes_text,
                         "comma-separated odd primes");
  add_json(c_selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (c_disc->parsed()) return cmd_disc(lit1, as_json);
    if (c_reduce->parsed()) return cmd_reduce(lit1, as_json);
    if (c_equiv->parsed()) return cmd_equiv(lit1, lit2, as_json);
    if (c_classgroup->parsed()) return cmd_classgroup(disc_text, as_json);
    if (c_lift->parsed()) return cmd_lift(lit1, f_text, g_text, as_json);
    if (c_lifts->parsed()) return cmd_lifts(lit1, f_text, as_json);
    if (c_descend->parsed()) return cmd_descend(lit1, f_text, as_json);
    if (c_semiequiv->parsed())
      return cmd_semiequiv(lit1, lit2, f_text, as_json);
    if (c_fiber->parsed()) return cmd_fiber(lit1, f_text, as_json);
    if (c_selftest->parsed())
      return cmd_selftest(dmin_text, dmax_text, primes_text, as_json);
  } catch (const bqf::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const bqf::precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

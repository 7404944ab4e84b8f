// Command-line surface: batch classification, root enumeration, form
// evaluation, sheaf-class encoding, case reduction, and relation checking
// over a weight type.  Output is line-oriented JSON or plain integers with
// a fixed key order, so runs are byte-reproducible.  Exit codes: 0 success,
// 1 relation-check failures, 2 usage or input errors.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wpl/loop_model.hpp"
#include "wpl/root_lattice.hpp"
#include "wpl/weyl.hpp"

namespace {

struct DeltaRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

DeltaRange parse_delta_range(const std::string& text) {
  std::size_t dots = text.find("..");
  if (dots == std::string::npos) {
    throw std::invalid_argument("delta range must look like \"a..b\"");
  }
  DeltaRange r;
  try {
    r.lo = std::stoll(text.substr(0, dots));
    r.hi = std::stoll(text.substr(dots + 2));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad delta range '" + text + "'");
  }
  if (r.lo > r.hi) throw std::invalid_argument("empty delta range '" + text + "'");
  return r;
}

std::int64_t parse_i64(const std::string& text, const char* what) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + text + "'");
  }
  if (pos != text.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + text + "'");
  }
  return v;
}

// Object syntax: "S[i,j]^r" (tube object), "Sgen^r" (generic torsion),
// "O(k=K)" or "O(k=K;a=a1,...,an)" (line bundle degree, normalized here).
wpl::ClassVector parse_object(const wpl::RootLattice& L, const std::string& text) {
  const wpl::WeightType& w = L.weight_type();
  if (text.rfind("Sgen^", 0) == 0) {
    return L.encode_generic_torsion(parse_i64(text.substr(5), "torsion length"));
  }
  if (text.rfind("S[", 0) == 0) {
    std::size_t close = text.find("]^");
    if (close == std::string::npos) throw std::invalid_argument("bad object '" + text + "'");
    std::string inside = text.substr(2, close - 2);
    std::size_t comma = inside.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad object '" + text + "'");
    int i = static_cast<int>(parse_i64(inside.substr(0, comma), "branch"));
    int j = static_cast<int>(parse_i64(inside.substr(comma + 1), "simple index"));
    std::int64_t r = parse_i64(text.substr(close + 2), "tube length");
    return L.encode_tube_object(i, j, r);
  }
  if (text.rfind("O(", 0) == 0 && text.back() == ')') {
    std::string inside = text.substr(2, text.size() - 3);
    std::size_t semi = inside.find(';');
    std::string kpart = semi == std::string::npos ? inside : inside.substr(0, semi);
    if (kpart.rfind("k=", 0) != 0) throw std::invalid_argument("bad object '" + text + "'");
    std::int64_t k = parse_i64(kpart.substr(2), "line degree");
    std::vector<std::int64_t> raw(static_cast<std::size_t>(w.branch_count()), 0);
    if (semi != std::string::npos) {
      std::string apart = inside.substr(semi + 1);
      if (apart.rfind("a=", 0) != 0) throw std::invalid_argument("bad object '" + text + "'");
      std::string list = apart.substr(2);
      std::size_t start = 0, idx = 0;
      while (start <= list.size() && !list.empty()) {
        std::size_t comma = list.find(',', start);
        std::string item =
            comma == std::string::npos ? list.substr(start) : list.substr(start, comma - start);
        if (idx >= raw.size()) throw std::invalid_argument("too many arm coordinates");
        raw[idx++] = parse_i64(item, "arm coordinate");
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (idx != raw.size()) throw std::invalid_argument("arm coordinate count mismatch");
    }
    wpl::GradingElement g;
    if (w.branch_count() == 0) {
      g.c_mult = k;
    } else {
      g = wpl::lp_normal_form(w, raw, k);
    }
    return L.encode_line_bundle(g);
  }
  throw std::invalid_argument("unknown object syntax '" + text + "'");
}

int run_vector_command(const wpl::RootLattice& L, const std::string& vector_text, bool use_stdin,
                       bool reduce_only) {
  auto emit = [&](const std::string& text) {
    wpl::ClassVector phi = L.parse_class_vector(text);
    if (reduce_only) {
      wpl::Reduction r = wpl::reduce_to_case(L, phi);
      nlohmann::ordered_json j;
      j["terminal_case"] = wpl::to_string(r.terminal_case);
      nlohmann::ordered_json word = nlohmann::ordered_json::array();
      for (int v : r.word) word.push_back(L.graph().label(v));
      j["word"] = word;
      j["terminal"] = L.to_text(r.terminal);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << wpl::classification_json(L, wpl::classify_hat(L, phi)) << "\n";
    }
  };
  if (use_stdin) {
    std::string line;
    while (std::getline(std::cin, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      emit(line);
    }
  } else {
    emit(vector_text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indecomposable-class calculator for weighted projective lines"};
  app.require_subcommand(1);

  std::string weights_text, vector_text, u_text, v_text, object_text, delta_text = "0..0";
  std::int64_t max_height = 10;
  std::size_t limit = wpl::EnumerationOptions{}.max_roots;
  int truncation = 2;
  bool use_stdin = false;

  auto add_weights = [&](CLI::App* cmd) {
    cmd->add_option("--weights", weights_text, "weight sequence, e.g. 2,3,5 or JSON")
        ->required();
  };

  CLI::App* classify = app.add_subcommand("classify", "classify a class vector");
  add_weights(classify);
  classify->add_option("--vector", vector_text, "class vector (text or JSON form)");
  classify->add_flag("--stdin", use_stdin, "read one vector per line from stdin");

  CLI::App* roots = app.add_subcommand("roots", "enumerate roots in a window");
  add_weights(roots);
  roots->add_option("--max-height", max_height, "finite-part height bound")->required();
  roots->add_option("--delta", delta_text, "delta coefficient range a..b");
  roots->add_option("--limit", limit, "resource bound on the enumeration");

  CLI::App* pair = app.add_subcommand("pair", "symmetric form of two vectors");
  add_weights(pair);
  pair->add_option("--u", u_text, "first vector")->required();
  pair->add_option("--v", v_text, "second vector")->required();

  CLI::App* encode = app.add_subcommand("encode", "class of a sheaf-theoretic object");
  add_weights(encode);
  encode->add_option("--object", object_text, "S[i,j]^r | Sgen^r | O(k=...;a=...)")->required();

  CLI::App* reduce = app.add_subcommand("reduce", "reflection reduction to a terminal case");
  add_weights(reduce);
  reduce->add_option("--vector", vector_text, "class vector (text or JSON form)");
  reduce->add_flag("--stdin", use_stdin, "read one vector per line from stdin");

  CLI::App* relations = app.add_subcommand("check-relations", "verify the loop-algebra relations");
  add_weights(relations);
  relations->add_option("--truncation", truncation, "loop index bound (default 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    wpl::RootLattice L(wpl::WeightType::parse(weights_text));

    if (classify->parsed() || reduce->parsed()) {
      if (!use_stdin && vector_text.empty()) {
        std::cerr << "usage error: provide --vector or --stdin\n";
        return 2;
      }
      return run_vector_command(L, vector_text, use_stdin, reduce->parsed());
    }
    if (roots->parsed()) {
      DeltaRange range = parse_delta_range(delta_text);
      wpl::EnumerationOptions opts;
      opts.max_roots = limit;
      for (const wpl::ClassVector& phi :
           wpl::enumerate_roots(L, max_height, range.lo, range.hi, opts)) {
        nlohmann::ordered_json j;
        j["vector"] = L.to_text(phi);
        j["verdict"] = wpl::to_string(wpl::classify_hat(L, phi).verdict);
        std::cout << j.dump() << "\n";
      }
      return 0;
    }
    if (pair->parsed()) {
      std::cout << L.symmetric_form(L.parse_class_vector(u_text), L.parse_class_vector(v_text))
                << "\n";
      return 0;
    }
    if (encode->parsed()) {
      std::cout << L.to_text(parse_object(L, object_text)) << "\n";
      return 0;
    }
    if (relations->parsed()) {
      wpl::LoopModel model(L);
      wpl::RelationReport report = model.check_loop_relations(truncation);
      std::cout << report.to_json() << "\n";
      return report.failed.empty() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

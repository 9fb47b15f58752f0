#pragma once

/* GIT presentation of a toric quotient: C^N acted on by (C*)^r through an
   integer weight matrix, with a stability character theta. Everything
   downstream (fixed points, orbits, curve classes) is derived from this
   data. Variable universe for all symbolic computation: one lambda per
   coordinate, then z, then w. */

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "multipoly.hpp"

namespace qwc {

/* Well-formed input whose geometry falls outside what the engine handles
   (orbifold fixed points, stability on a wall, ...). */
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GitPresentation {
  std::string name;
  int r = 0;                                 /* torus rank */
  std::vector<std::vector<long>> weights;    /* r rows, N columns */
  std::vector<long> theta;                   /* length r */
  std::vector<std::vector<long>> effective_generators; /* optional, rows in Z^r */
  std::vector<Rat> lambda_shift;             /* optional, length N */
  std::vector<std::string> labels;           /* optional ray names, length N */

  int rays() const { return weights.empty() ? 0 : (int)weights[0].size(); }
  int dim() const { return rays() - r; }
  int nvars() const { return rays() + 2; }
  int zvar() const { return rays(); }
  int wvar() const { return rays() + 1; }

  MultiPoly lambda(int i) const { return MultiPoly::variable(nvars(), i); }
  MultiPoly zpoly() const { return MultiPoly::variable(nvars(), zvar()); }

  std::vector<long> weight_column(int ray) const {
    std::vector<long> c(r);
    for (int i = 0; i < r; ++i) c[i] = weights[i][ray];
    return c;
  }

  std::vector<std::string> var_names() const {
    std::vector<std::string> v;
    for (int i = 0; i < rays(); ++i) v.push_back("l" + std::to_string(i + 1));
    v.push_back("z");
    v.push_back("w");
    return v;
  }

  /* Pairing of a curve class with each ray bundle, and the theta-degree. */
  std::vector<long> ray_degrees(const std::vector<long>& b) const {
    std::vector<long> d(rays(), 0);
    for (int j = 0; j < rays(); ++j)
      for (int i = 0; i < r; ++i) d[j] += weights[i][j] * b[i];
    return d;
  }
  long theta_degree(const std::vector<long>& b) const {
    long d = 0;
    for (int i = 0; i < r; ++i) d += theta[i] * b[i];
    return d;
  }

  void validate() const {
    if (r < 1) throw std::invalid_argument("torus rank must be at least 1");
    if ((int)weights.size() != r)
      throw std::invalid_argument("weight matrix needs one row per torus factor ("
                                  + std::to_string(r) + " expected, got "
                                  + std::to_string(weights.size()) + ")");
    size_t N = weights[0].size();
    if (N < (size_t)r)
      throw std::invalid_argument("need at least as many coordinates as torus factors");
    for (const auto& row : weights)
      if (row.size() != N)
        throw std::invalid_argument("weight matrix rows have unequal lengths");
    if ((int)theta.size() != r)
      throw std::invalid_argument("stability character needs one entry per torus factor");
    {
      /* Row rank over Q must be full, or the torus does not act faithfully
         and no character basis of complementary rays can exist. */
      std::vector<std::vector<Rat>> m(r, std::vector<Rat>(N));
      for (int i = 0; i < r; ++i)
        for (size_t j = 0; j < N; ++j) m[i][j] = Rat(weights[i][j]);
      int rank = 0;
      for (size_t col = 0; col < N && rank < r; ++col) {
        int piv = -1;
        for (int i = rank; i < r; ++i)
          if (m[i][col] != 0) {
            piv = i;
            break;
          }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int i = rank + 1; i < r; ++i) {
          if (m[i][col] == 0) continue;
          Rat f = m[i][col] / m[rank][col];
          for (size_t j = col; j < N; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
      }
      if (rank < r)
        throw std::invalid_argument(
            "weight matrix is rank-deficient (rank " + std::to_string(rank) +
            " < torus rank " + std::to_string(r) + ")");
    }
    bool all0 = true;
    for (long t : theta) all0 = all0 && t == 0;
    if (all0) throw std::invalid_argument("stability character must be nonzero");
    for (const auto& g : effective_generators) {
      if ((int)g.size() != r)
        throw std::invalid_argument("effective generator of wrong rank");
      if (theta_degree(g) < 1)
        throw std::invalid_argument(
            "effective generator must have positive theta-degree");
    }
    if (!lambda_shift.empty() && (int)lambda_shift.size() != (int)N)
      throw std::invalid_argument("lambda_shift needs one entry per coordinate");
    if (!labels.empty() && labels.size() != N)
      throw std::invalid_argument("labels needs one name per coordinate");
  }

  /* Shift vector over the full variable universe; z and w are never shifted. */
  std::vector<Rat> full_shift() const {
    std::vector<Rat> s(nvars(), Rat(0));
    for (size_t i = 0; i < lambda_shift.size(); ++i) s[i] = lambda_shift[i];
    return s;
  }
  bool has_shift() const {
    for (const auto& c : lambda_shift)
      if (c != 0) return true;
    return false;
  }

  static GitPresentation preset(const std::string& id) {
    GitPresentation P;
    P.name = id;
    if (id == "p1") {
      P.r = 1;
      P.weights = {{1, 1}};
      P.theta = {1};
    } else if (id == "p2") {
      P.r = 1;
      P.weights = {{1, 1, 1}};
      P.theta = {1};
    } else if (id == "f2") {
      P.r = 2;
      P.weights = {{1, 1, 0, -2}, {0, 0, 1, 1}};
      P.theta = {1, 1};
    } else if (id == "local-p2") {
      P.r = 1;
      P.weights = {{1, 1, 1, -3}};
      P.theta = {1};
    } else if (id == "point") {
      P.r = 1;
      P.weights = {{1}};
      P.theta = {1};
      P.effective_generators = {{1}};
    } else if (id == "point-r2") {
      P.r = 2;
      P.weights = {{1, 0}, {0, 1}};
      P.theta = {1, 1};
      P.effective_generators = {{1, 0}, {0, 1}};
    } else {
      throw std::invalid_argument(
          "unknown preset '" + id +
          "' (known: p1, p2, f2, local-p2, point, point-r2)");
    }
    P.validate();
    return P;
  }

  static GitPresentation from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    GitPresentation P;
    auto need = [&](const char* key) {
      if (!j.contains(key))
        throw std::invalid_argument(std::string("missing field '") + key + "'");
    };
    if (!j.contains("r") && !j.contains("torus_rank"))
      throw std::invalid_argument("missing field 'r' (alias: 'torus_rank')");
    need("weights");
    need("theta");
    P.name = j.value("name", std::string("input"));
    try {
      P.r = j.contains("r") ? j.at("r").get<int>()
                            : j.at("torus_rank").get<int>();
      P.weights = j.at("weights").get<std::vector<std::vector<long>>>();
      P.theta = j.at("theta").get<std::vector<long>>();
      if (j.contains("n")) {
        /* The dimension is determined by the weight matrix; a declared value
           must agree with it. */
        int n = j.at("n").get<int>();
        int cols = P.weights.empty() ? 0 : (int)P.weights[0].size();
        if (n != cols - P.r)
          throw std::invalid_argument(
              "declared dimension n=" + std::to_string(n) + " but weights have " +
              std::to_string(cols) + " columns with r=" + std::to_string(P.r) +
              " (expected n+r columns)");
      }
      if (j.contains("labels"))
        P.labels = j.at("labels").get<std::vector<std::string>>();
      if (j.contains("effective_generators"))
        P.effective_generators =
            j.at("effective_generators").get<std::vector<std::vector<long>>>();
      if (j.contains("lambda_shift")) {
        for (const auto& v : j.at("lambda_shift")) {
          if (v.is_string())
            P.lambda_shift.push_back(rat_parse(v.get<std::string>()));
          else
            P.lambda_shift.push_back(Rat(v.get<long>()));
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("malformed field: ") + e.what());
    }
    P.validate();
    return P;
  }

  static GitPresentation from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
      throw std::invalid_argument("cannot open input file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
  }
};

}  // namespace qwc

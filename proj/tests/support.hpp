#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "garrow/derivation.hpp"
#include "garrow/eval.hpp"
#include "garrow/flatten.hpp"
#include "garrow/residual.hpp"
#include "garrow/syntax.hpp"
#include "garrow/typecheck.hpp"

#ifndef GARROW_SAMPLES
#error "GARROW_SAMPLES must point at the samples directory"
#endif

namespace support {

inline std::string sample_path(const std::string& name) { return std::string(GARROW_SAMPLES) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string read_sample(const std::string& name) { return read_file(sample_path(name)); }

inline std::shared_ptr<const garrow::StagedCode> stage(const std::string& source, const std::string& entry,
                                                       const std::vector<garrow::Value>& args = {}) {
  garrow::StageEnv env(garrow::typecheck(garrow::parse_program(source)));
  return garrow::stage_entry(env, entry, args);
}

/// Guest arguments packed into the absorbed domain shape.
inline garrow::Value absorbed_value(const std::vector<garrow::Value>& args) {
  if (args.empty()) return garrow::Value::Unit();
  garrow::Value acc = args[0];
  for (std::size_t i = 1; i < args.size(); ++i) acc = garrow::Value::Pair(acc, args[i]);
  return acc;
}

inline garrow::Value random_data(const garrow::GuestType& t, std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  using GK = garrow::GuestType::Kind;
  switch (t.kind()) {
    case GK::Int: return garrow::Value::Int(std::uniform_int_distribution<std::int64_t>(lo, hi)(rng));
    case GK::Bool: return garrow::Value::Bool(rng() & 1);
    case GK::Unit: return garrow::Value::Unit();
    case GK::Prod: {
      garrow::Value l = random_data(t.left(), rng, lo, hi);
      return garrow::Value::Pair(l, random_data(t.right(), rng, lo, hi));
    }
    default: throw std::runtime_error("no random data for " + t.to_string());
  }
}

/// Residual text of a term, re-read and run at level 0 on `input`.
inline garrow::Value run_residual_text(const std::string& text, const garrow::Value& input) {
  garrow::TypedPtr t = garrow::typecheck_expr(garrow::parse_expr(text));
  garrow::StageEnv env(garrow::TypedProgram{});
  garrow::Value f = env.eval(*t);
  return env.apply(f, input);
}

// Canonical form of a printed type up to consistent renaming of variables
// and classifiers: every lowercase identifier is replaced by the index of
// its first occurrence.
inline std::string canonical(const std::string& s) {
  std::map<std::string, int> names;
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    if (std::islower(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      std::string id = s.substr(i, j - i);
      if (id == "forall") {
        out += id;
      } else {
        auto it = names.emplace(id, static_cast<int>(names.size())).first;
        out += "v" + std::to_string(it->second);
      }
      i = j;
    } else if (s[i] == ' ') {
      ++i;
    } else {
      out += s[i++];
    }
  }
  return out;
}

}  // namespace support

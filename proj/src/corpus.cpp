//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/corpus.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "fragtok/error.h"
#include "fragtok/sanitize.h"
#include "fragtok/smiles.h"

namespace fragtok {

std::vector<SmilesRecord> read_smiles(std::istream &in) {
  std::vector<SmilesRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();

    std::istringstream fields(line);
    SmilesRecord rec;
    if (!(fields >> rec.smiles) || rec.smiles.front() == '#')
      continue;
    if (!(fields >> rec.id))
      rec.id = "mol_" + std::to_string(lineno);
    rec.line = lineno;
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<SmilesRecord> read_smiles_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open " + path.string());
  return read_smiles(in);
}

ParsedCorpus parse_corpus(std::vector<SmilesRecord> records, int workers) {
  ParsedCorpus pc;
  pc.records = std::move(records);
  pc.mols.resize(pc.records.size());
  pc.errors.resize(pc.records.size());
  parallel_for(pc.records.size(), workers, [&](std::size_t i) {
    try {
      MolGraph mol = parse_smiles(pc.records[i].smiles);
      if (auto problem = sanitize(mol))
        pc.errors[i] = problem->message();
      else
        pc.mols[i] = std::move(mol);
    } catch (const Error &e) {
      pc.errors[i] = e.what();
    }
  });
  for (const auto &m: pc.mols)
    pc.failures += !m.has_value();
  return pc;
}

std::vector<MolGraph> parsed_molecules(const ParsedCorpus &corpus) {
  std::vector<MolGraph> out;
  out.reserve(corpus.mols.size());
  for (const auto &m: corpus.mols)
    if (m)
      out.push_back(*m);
  return out;
}

int default_workers() {
  if (const char *env = std::getenv("FRAGTOK_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0)
      return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void log_event(std::string_view level, std::string_view event,
               nlohmann::json fields) {
  static std::mutex mu;
  nlohmann::json line = nlohmann::json::object();
  line["level"] = level;
  line["event"] = event;
  for (auto &[k, v]: fields.items())
    line[k] = v;
  std::lock_guard lock(mu);
  std::cerr << line.dump() << '\n';
}

}  // namespace fragtok

#ifndef THINSERIES_FORMAT_HPP
#define THINSERIES_FORMAT_HPP

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "thinseries/bigint.hpp"
#include "thinseries/error.hpp"
#include "thinseries/partitions.hpp"

namespace thinseries {

// OEIS b-file lines: "n value", one per line, newline-terminated.
inline std::string to_bfile(const std::vector<Int>& values, long first_n = 0) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += std::to_string(first_n + static_cast<long>(i));
    out += ' ';
    out += to_decimal(values[i]);
    out += '\n';
  }
  return out;
}

inline std::vector<std::pair<long, Int>> parse_bfile(const std::string& text) {
  std::vector<std::pair<long, Int>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long n;
    std::string value;
    if (!(ls >> n >> value))
      throw Error("invalid_argument", "malformed b-file line: " + line);
    out.emplace_back(n, Int(value));
  }
  return out;
}

inline std::string to_csv(const std::vector<Int>& values,
                          const std::string& header, long first_n = 0) {
  std::string out = header + "\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += std::to_string(first_n + static_cast<long>(i));
    out += ',';
    out += to_decimal(values[i]);
    out += '\n';
  }
  return out;
}

// Big integers travel as decimal strings in JSON.
inline nlohmann::json to_json_array(const std::vector<Int>& values) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Int& v : values) arr.push_back(to_decimal(v));
  return arr;
}

// Slash-separated block rendering, e.g. "234/6/1/57/89".  Elements are
// concatenated digits when the ground set fits in 1..9 (the notation used
// throughout for small examples) and comma-separated otherwise.
inline std::string partition_to_string(const OrderedSetPartition& p) {
  if (p.ground_size() == 0) return "()";
  const bool digits = p.ground_size() <= 9;
  std::string out;
  for (std::size_t i = 0; i < p.blocks().size(); ++i) {
    if (i) out += '/';
    const auto& block = p.blocks()[i];
    for (std::size_t j = 0; j < block.size(); ++j) {
      if (!digits && j) out += ',';
      out += std::to_string(block[j]);
    }
  }
  return out;
}

inline OrderedSetPartition parse_partition(const std::string& text) {
  if (text.empty() || text == "()") return OrderedSetPartition{};
  std::vector<std::vector<int>> blocks;
  std::istringstream in(text);
  std::string token;
  int total = 0;
  bool commas = text.find(',') != std::string::npos;
  while (std::getline(in, token, '/')) {
    std::vector<int> block;
    if (commas) {
      std::istringstream bs(token);
      std::string elt;
      while (std::getline(bs, elt, ','))
        block.push_back(std::stoi(elt));
    } else {
      for (char ch : token) {
        if (ch < '1' || ch > '9')
          throw Error("bad_partition",
                      std::string("unexpected character '") + ch +
                          "' in partition");
        block.push_back(ch - '0');
      }
    }
    total += static_cast<int>(block.size());
    blocks.push_back(std::move(block));
  }
  return OrderedSetPartition(total, std::move(blocks));
}

inline std::string permutation_to_string(const std::vector<int>& perm) {
  const bool digits =
      perm.size() <= 9; // same convention as partition rendering
  std::string out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (!digits && i) out += ',';
    out += std::to_string(perm[i]);
  }
  return out;
}

} // namespace thinseries

#endif

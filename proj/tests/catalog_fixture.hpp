#pragma once

// Three-set game boards drawn in the catalog figures, one bullet per occupied
// Venn region, with the drawn pairing arrows. Region names: a_i lies only in
// set i, b_i lies in the two sets other than i, c lies in all three.

#include <string>
#include <utility>
#include <vector>

struct CatalogBoard {
  std::vector<std::string> occupied;
  std::vector<std::pair<std::string, std::string>> pairs;
};

inline const std::vector<CatalogBoard> kSplitCatalog = {
    {{"a1", "a2", "a3"}, {}},
    {{"a1", "a2", "b2"}, {{"a1", "b2"}}},
    {{"a1", "b2", "c"}, {{"c", "b2"}}},
    {{"a1", "b2", "b3"}, {}},
    {{"b1", "b2", "b3", "c"}, {}},
    {{"a3", "b1", "b3", "c"}, {{"c", "b3"}}},
    {{"a2", "a3", "b1", "b3"}, {{"a3", "b1"}}},
    {{"a2", "a3", "b1", "c"}, {}},
    {{"a2", "a3", "b2", "b3", "c"}, {{"a2", "b3"}, {"c", "b2"}}},
    {{"a1", "a2", "a3", "b1", "b2", "b3"}, {{"a1", "b3"}, {"a2", "b1"}, {"a3", "b2"}}},
};

inline const std::vector<CatalogBoard> kSkewCatalog = {
    {{"b2", "b3", "c"}, {}},
    {{"a3", "b3", "c"}, {}},
    {{"a2", "a3", "c"}, {}},
    {{"b1", "b2", "b3"}, {}},
    {{"a3", "b1", "b3"}, {}},
    {{"a2", "a3", "b1"}, {}},
    {{"a1", "b2", "b3", "c"}, {}},
    {{"a1", "a3", "b3", "c"}, {}},
    {{"a1", "a2", "a3", "c"}, {}},
    {{"a1", "b1", "b2", "b3"}, {}},
    {{"a1", "a3", "b1", "b3"}, {}},
    {{"a1", "a2", "a3", "b1"}, {}},
    {{"a3", "b1", "b2", "b3", "c"}, {{"a3", "b3"}, {"b1", "b2"}}},
    {{"a2", "a3", "b1", "b3", "c"}, {{"a2", "c"}, {"a3", "b3"}}},
    {{"a2", "a3", "b1", "b2", "b3"}, {{"a3", "b3"}, {"a2", "b2"}}},
    {{"a1", "a2", "a3", "b3", "c"}, {{"a3", "b3"}, {"a2", "a1"}}},
    {{"a1", "a2", "a3", "b2", "b3"}, {{"a2", "b2"}, {"a3", "a1"}}},
    {{"a2", "a3", "b1", "b2", "b3", "c"}, {{"a2", "c"}, {"b1", "b2"}, {"a3", "b3"}}},
    {{"a1", "a2", "a3", "b2", "b3", "c"}, {{"a1", "c"}, {"a2", "b2"}, {"a3", "b3"}}},
    {{"a1", "a2", "a3", "b1", "b2", "b3", "c"}, {{"a2", "a3"}, {"b2", "b3"}, {"a1", "b1"}}},
};

// Labels a small graph, then answers connectivity queries under edge faults
// from the labels alone.

#include <array>
#include <iostream>

#include "ftc/ftc.hpp"

int main() {
  // Two triangles joined by the bridge 2-3.
  const ftc::Graph g(6, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 5}});
  const ftc::LabelSet labels = ftc::build_labels(g, 2);

  std::cout << "vertex label bits: " << labels.params.vertex_label_bits() << "\n"
            << "edge label bits:   " << labels.params.edge_label_bits() << "\n"
            << "hierarchy depth:   " << labels.params.h << "\n";

  const auto e01 = *labels.find_edge(0, 1);
  const auto e12 = *labels.find_edge(1, 2);
  const auto e23 = *labels.find_edge(2, 3);

  const std::array<ftc::edge_id, 2> two_sides{e01, e12};
  std::cout << "1 ~ 0 without {0-1, 1-2}: " << std::boolalpha << ftc::query(labels, 1, 0, two_sides) << "\n";

  const std::array<ftc::edge_id, 1> bridge{e23};
  std::cout << "0 ~ 5 without {2-3}:      " << ftc::query(labels, 0, 5, bridge) << "\n";

  const std::array<ftc::edge_id, 1> one{e01};
  std::cout << "0 ~ 5 without {0-1}:      " << ftc::query(labels, 0, 5, one, ftc::Engine::basic) << "\n";
}

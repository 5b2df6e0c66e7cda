// Builds the small constructions and prints claimed versus measured
// distances between their endpoints.

#include <iostream>

#include "reconfig/reconfig.hpp"

using namespace reconfig;

static void show(const Construction& c) {
  const auto& r = c.report;
  const auto d = distance(c.graph, r.k, r.start, r.target, Rule::jumping);
  std::cout << r.construction << ": n=" << c.graph.order() << " k=" << r.k << " claim " << r.primary().formula
            << " = " << r.primary().value << ", measured ";
  if (d.distance) std::cout << *d.distance;
  else std::cout << (d.capped ? "capped" : "unreachable");
  std::cout << '\n';
}

int main() {
  show(complement_path(7));
  show(circulant_ap_graph(17, {1}));
  show(build_k3_extremal(47));
  auto base = complement_path(4);
  show(toll_booth_extend(base.graph, 2, base.report.start, base.report.target, 2));
  show(iterate_toll(2, 1));
  show(triple_extend(base.graph, 2, base.report.start, base.report.target, 73, std::vector<std::int64_t>{1}));

  const auto ap = best_3ap_free(1000);
  std::cout << "3-AP-free subset of [1,1000]: " << ap.size() << " elements (" << ap.method << ")\n";
}

// Acceptance matrix A1-A8; one PASS/FAIL line per criterion.
#include "gtsing/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

int main(int argc, char** argv) {
  gtsing::AcceptanceConfig cfg;
  if (const char* t = std::getenv("GTSING_THREADS")) cfg.threads = static_cast<unsigned>(std::atoi(t));
  bool all = true;
  gtsing::Json report = gtsing::Json::array();
  gtsing::run_acceptance(cfg, [&](const gtsing::CriterionResult& r) {
    std::printf("%s %s: %s [%s] (%.1fs)\n", r.ok ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(), r.summary.c_str(),
                r.seconds);
    std::fflush(stdout);
    all = all && r.ok;
    report.push_back({{"id", r.id}, {"ok", r.ok}, {"summary", r.summary}, {"details", r.details}});
  });
  if (argc > 1) std::ofstream(argv[1]) << report.dump(2) << "\n";
  return all ? 0 : 1;
}

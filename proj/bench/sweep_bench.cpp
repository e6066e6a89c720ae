// Compares the serial reference sweep against the OpenMP kernel and checks
// they produce identical bits. Usage: crnrob_bench [points]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "crnrob/dose_response.hpp"
#include "crnrob/parser.hpp"

using namespace crnrob;
using Clock = std::chrono::steady_clock;

namespace {

ReactionNetwork load(const std::string& name) {
  std::ifstream in(std::string(CRNROB_NETWORKS_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  auto r = parse_network(buf.str(), name);
  if (!r.ok()) {
    std::fprintf(stderr, "fixture %s failed to parse\n", name.c_str());
    std::exit(1);
  }
  return *r.network;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int points = argc > 1 ? std::atoi(argv[1]) : 160;

  ReactionNetwork net = load("envz_ompr.crn");
  auto prob = SteadyStateProblem::build(net);
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(net.species_count());
  LambdaGrid grid = LambdaGrid::geometric(0.1, 1e6, points);

  auto t0 = Clock::now();
  SweepResult serial = sweep_serial(prob, x0, 0, grid, {});
  double t_serial = seconds_since(t0);

  t0 = Clock::now();
  SweepResult parallel = sweep_parallel(prob, x0, 0, grid, {}, 0);
  double t_parallel = seconds_since(t0);

  bool identical = serial.states.size() == parallel.states.size();
  for (size_t k = 0; identical && k < serial.states.size(); ++k) {
    identical = serial.states[k].converged == parallel.states[k].converged &&
                serial.states[k].x == parallel.states[k].x;
  }

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("points:   %d\n", points);
  std::printf("threads:  %d\n", threads);
  std::printf("serial:   %.3f s\n", t_serial);
  std::printf("parallel: %.3f s  (speedup %.2fx)\n", t_parallel, t_serial / t_parallel);
  std::printf("bit-identical results: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}

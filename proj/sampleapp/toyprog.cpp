// Toy deterministic program-under-test for the sample application.
//
// Reads a parameter file of "key: value" lines (seed, steps, perturb, and
// optionally work_ms) and writes two output files into the current
// directory:
//
//   field.dat    64 bytes per step from a 64-bit linear congruential
//                generator (Knuth's MMIX constants: multiplier
//                6364136223846793005, increment 1442695040888963407),
//                states serialized little-endian so any platform
//                reproduces identical bytes.
//   summary.txt  step count, a checksum of the final generator state, and
//                a completion sentinel line.
//
// Identical parameter files yield bitwise-identical outputs. A nonzero
// perturb value is XORed into the seed bit pattern, so any perturbation
// changes field.dat.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

namespace {

constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

struct Params {
  std::uint64_t seed = 0;
  long steps = 0;
  double perturb = 0.0;
  long work_ms = 0;
};

bool parse_params(const std::string& path, Params& p) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "toyprog: cannot read parameter file " << path << "\n";
    return false;
  }
  std::string line;
  while (std::getline(in, line)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    std::istringstream v(value);
    if (key == "seed")
      v >> p.seed;
    else if (key == "steps")
      v >> p.steps;
    else if (key == "perturb")
      v >> p.perturb;
    else if (key == "work_ms")
      v >> p.work_ms;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: toyprog <paramfile>\n";
    return 2;
  }
  Params p;
  if (!parse_params(argv[1], p)) return 2;

  std::uint64_t perturb_bits = 0;
  std::memcpy(&perturb_bits, &p.perturb, sizeof perturb_bits);
  std::uint64_t state = p.seed ^ perturb_bits;

  if (p.work_ms > 0)
    std::this_thread::sleep_for(std::chrono::milliseconds(p.work_ms));

  std::ofstream field("field.dat", std::ios::binary);
  if (!field) {
    std::cerr << "toyprog: cannot write field.dat\n";
    return 1;
  }
  for (long step = 0; step < p.steps; ++step) {
    for (int k = 0; k < 8; ++k) {
      state = state * kMultiplier + kIncrement;
      char bytes[8];
      for (int b = 0; b < 8; ++b)
        bytes[b] = static_cast<char>((state >> (8 * b)) & 0xff);
      field.write(bytes, 8);
    }
  }
  field.close();

  std::ofstream summary("summary.txt");
  if (!summary) {
    std::cerr << "toyprog: cannot write summary.txt\n";
    return 1;
  }
  char checksum[32];
  std::snprintf(checksum, sizeof checksum, "%016llx",
                static_cast<unsigned long long>(state));
  summary << "steps: " << p.steps << "\n"
          << "checksum: " << checksum << "\n"
          << "status: complete\n";
  summary.close();
  return 0;
}

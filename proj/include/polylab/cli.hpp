#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace polylab::cli {

// Exit codes: 0 pass, 1 check or solver violation, 2 input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInput = 2;

struct GridSpec {
    double x0 = 0, x1 = 1;
    int nx = 2;
    double y0 = -1, y1 = 1;
    int ny = 2;
};

// "x0,x1,nx,y0,y1,ny"; throws BadParams.
GridSpec parse_grid(const std::string& text);
// "k=v,k=v"; throws BadParams.
std::map<std::string, double> parse_params(const std::string& text);

// Parameter count of the synthesis family for an n-edge outline, raw and up to homothety.
struct ParamCount {
    int raw = 0;
    int modulo_homothety = 0;
};
ParamCount family_params(int edges);

// Runs the command line (args excludes the program name). Output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polylab::cli

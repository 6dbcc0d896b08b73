#pragma once

#include <string>
#include <vector>

#include "itx/discrete_it.hpp"
#include "itx/measures.hpp"

// CSV formats:
//   point cloud   header x0,x1,...[,weight], one point per row
//   coupling      header i,j,mass
//   dual          header side,index,value with side u or v
// Doubles are printed with %.17g so a write/read round trip is exact.
namespace itx {

std::string format_double(double x);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::string points_to_csv(const DiscreteMeasure& m, bool with_weights);
DiscreteMeasure points_from_csv(const std::string& text);

void save_points(const DiscreteMeasure& m, const std::string& path, bool with_weights = false);
DiscreteMeasure load_points(const std::string& path);

std::string coupling_to_csv(const Coupling& c);
// Needs the marginal sizes to rebuild the bookkeeping vectors.
Coupling coupling_from_csv(const std::string& text, int rows, int cols);
void save_coupling(const Coupling& c, const std::string& path);
Coupling load_coupling(const std::string& path, int rows, int cols);

std::string dual_to_csv(const DualSolution& d);
void save_dual(const DualSolution& d, const std::string& path);

}  // namespace itx

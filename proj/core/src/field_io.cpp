#include "stokes43/field_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

namespace stokes43 {

namespace {

void write_coeff_line(std::ostream& os, const Eigen::VectorXd& c) {
  char buf[64];
  for (int i = 0; i < c.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", c[i]);
    os << (i ? " " : "") << buf;
  }
  os << '\n';
}

/// Point location by bucketing triangle bounding boxes on a uniform grid.
class TriangleLocator {
 public:
  explicit TriangleLocator(const Triangulation& T) : mesh_(&T) {
    lo_ = hi_ = T.nodes[0];
    for (const Vec2& p : T.nodes) {
      lo_ = lo_.cwiseMin(p);
      hi_ = hi_.cwiseMax(p);
    }
    nb_ = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(T.n_triangles()))));
    bins_.resize(nb_ * nb_);
    for (int t = 0; t < T.n_triangles(); ++t) {
      const Triangle K = T.triangle(t);
      Vec2 blo = K.v[0].cwiseMin(K.v[1]).cwiseMin(K.v[2]);
      Vec2 bhi = K.v[0].cwiseMax(K.v[1]).cwiseMax(K.v[2]);
      int i0, j0, i1, j1;
      cell(blo, i0, j0);
      cell(bhi, i1, j1);
      for (int i = i0; i <= i1; ++i)
        for (int j = j0; j <= j1; ++j) bins_[i * nb_ + j].push_back(t);
    }
  }

  Vec2 lo() const { return lo_; }
  Vec2 hi() const { return hi_; }

  /// Containing triangle and its barycentric coordinates, or -1.
  int locate(const Vec2& p, Vec3& lambda) const {
    int i, j;
    cell(p, i, j);
    for (int t : bins_[i * nb_ + j]) {
      const Vec3 l = mesh_->triangle(t).barycentric(p);
      if (l.minCoeff() >= -1e-12) {
        lambda = l;
        return t;
      }
    }
    return -1;
  }

 private:
  void cell(const Vec2& p, int& i, int& j) const {
    const Vec2 span = (hi_ - lo_).cwiseMax(1e-300);
    i = std::clamp(static_cast<int>((p.x() - lo_.x()) / span.x() * nb_), 0, nb_ - 1);
    j = std::clamp(static_cast<int>((p.y() - lo_.y()) / span.y() * nb_), 0, nb_ - 1);
  }

  const Triangulation* mesh_;
  Vec2 lo_, hi_;
  int nb_;
  std::vector<std::vector<int>> bins_;
};

}  // namespace

void write_pressure_field(std::ostream& os, const PressureField& p) {
  for (const TriPoly& q : p.polys) write_coeff_line(os, q.coeffs());
}

void write_velocity_field(std::ostream& os, const VelocityField& u) {
  for (const VecPoly& v : u.polys) {
    write_coeff_line(os, v.x.coeffs());
    write_coeff_line(os, v.y.coeffs());
  }
}

void write_vtu(std::ostream& os, const Triangulation& T, const VelocityField& u,
               const PressureField& p, int cells_per_side) {
  const TriangleLocator loc(T);
  const int n = cells_per_side, np = n + 1;
  const Vec2 lo = loc.lo(), span = loc.hi() - loc.lo();

  std::vector<Vec2> uvals(np * np, Vec2::Zero());
  std::vector<double> pvals(np * np, 0.0);
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < np; ++i) {
      const Vec2 x = lo + Vec2(span.x() * i / n, span.y() * j / n);
      Vec3 l;
      const int t = loc.locate(x, l);
      if (t >= 0) {
        uvals[j * np + i] = u.eval(t, l);
        pvals[j * np + i] = p.eval(t, l);
      }
    }

  char buf[64];
  const auto g = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
  };
  os << "<?xml version=\"1.0\"?>\n"
     << "<VTKFile type=\"UnstructuredGrid\" version=\"0.1\" byte_order=\"LittleEndian\">\n"
     << "<UnstructuredGrid>\n"
     << "<Piece NumberOfPoints=\"" << np * np << "\" NumberOfCells=\"" << n * n << "\">\n";
  os << "<Points><DataArray type=\"Float64\" NumberOfComponents=\"3\" format=\"ascii\">\n";
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < np; ++i)
      os << g(lo.x() + span.x() * i / n) << ' ' << g(lo.y() + span.y() * j / n) << " 0\n";
  os << "</DataArray></Points>\n<Cells>\n";
  os << "<DataArray type=\"Int32\" Name=\"connectivity\" format=\"ascii\">\n";
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      os << j * np + i << ' ' << j * np + i + 1 << ' ' << (j + 1) * np + i + 1 << ' '
         << (j + 1) * np + i << '\n';
  os << "</DataArray>\n<DataArray type=\"Int32\" Name=\"offsets\" format=\"ascii\">\n";
  for (int k = 1; k <= n * n; ++k) os << 4 * k << '\n';
  os << "</DataArray>\n<DataArray type=\"UInt8\" Name=\"types\" format=\"ascii\">\n";
  for (int k = 0; k < n * n; ++k) os << "9\n";
  os << "</DataArray>\n</Cells>\n";
  os << "<PointData Scalars=\"pressure\" Vectors=\"velocity\">\n";
  os << "<DataArray type=\"Float64\" Name=\"pressure\" format=\"ascii\">\n";
  for (double v : pvals) os << g(v) << '\n';
  os << "</DataArray>\n"
     << "<DataArray type=\"Float64\" Name=\"velocity\" NumberOfComponents=\"3\" format=\"ascii\">\n";
  for (const Vec2& v : uvals) os << g(v.x()) << ' ' << g(v.y()) << " 0\n";
  os << "</DataArray>\n</PointData>\n</Piece>\n</UnstructuredGrid>\n</VTKFile>\n";
}

}  // namespace stokes43

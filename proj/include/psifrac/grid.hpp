#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace psifrac {

/// Tensor-product node set on [0,a] x [0,b].
struct Grid2D {
    std::vector<double> x;  ///< x_0 = 0 < ... < x_{nx-1} = a
    std::vector<double> y;  ///< y_0 = 0 < ... < y_{ny-1} = b

    Grid2D() = default;
    /// Validates node arrays; throws DomainError on non-monotone nodes or bad endpoints.
    Grid2D(std::vector<double> x_nodes, std::vector<double> y_nodes);
    static Grid2D uniform(double a, double b, std::size_t nx, std::size_t ny);
    /// Nodes a (i/(nx-1))^r, clustered at the origin where fractional integrals
    /// of smooth data behave like powers. r >= 1; r = 1 is uniform.
    static Grid2D graded(double a, double b, std::size_t nx, std::size_t ny, double r);

    std::size_t nx() const { return x.size(); }
    std::size_t ny() const { return y.size(); }
    std::size_t size() const { return x.size() * y.size(); }
    double a() const { return x.back(); }
    double b() const { return y.back(); }
    bool operator==(const Grid2D& o) const { return x == o.x && y == o.y; }
};

/// Scalar field on a grid, stored row-major in x: value(i, j) = values[i*ny + j].
struct Field2D {
    Grid2D grid;
    std::vector<double> values;

    Field2D() = default;
    explicit Field2D(Grid2D g, double fill = 0.0);
    Field2D(Grid2D g, std::vector<double> v);

    std::size_t nx() const { return grid.nx(); }
    std::size_t ny() const { return grid.ny(); }
    double& operator()(std::size_t i, std::size_t j) { return values[i * grid.ny() + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values[i * grid.ny() + j]; }

    /// Sample fn(x, y) at every node.
    template <class Fn>
    static Field2D sample(const Grid2D& g, Fn&& fn) {
        Field2D f(g);
        for (std::size_t i = 0; i < g.nx(); ++i)
            for (std::size_t j = 0; j < g.ny(); ++j) f(i, j) = fn(g.x[i], g.y[j]);
        return f;
    }

    /// Throws DomainError if any value is NaN or infinite.
    void check_finite(const char* what) const;
    double sup_abs() const;
};

/// Throws GridMismatchError unless both fields live on the same grid.
void require_same_grid(const Field2D& a, const Field2D& b);

/// Shortest round-trip decimal spelling of a double.
std::string format_double(double v);

/// CSV with header "x,y,value", one row per node, x-major.
void write_field_csv(std::ostream& os, const Field2D& f);
void write_field_csv(const std::string& path, const Field2D& f);
/// Reads the CSV layout above; the grid is rebuilt from the distinct x and y values.
Field2D read_field_csv(std::istream& is);
Field2D read_field_csv(const std::string& path);

}  // namespace psifrac

#include "msqed/grid.hpp"

namespace msqed {

double l2_inner_real(const RealField& a, const RealField& b) {
    require_same_box(a.box, b.box, "l2_inner_real");
    double s = 0.0;
    for (std::size_t q = 0; q < a.size(); ++q) s += a.v[q] * b.v[q];
    return s * a.box.wx();
}

Complex l2_inner(const ComplexField& a, const ComplexField& b) {
    require_same_box(a.box, b.box, "l2_inner");
    Complex s{};
    for (std::size_t q = 0; q < a.size(); ++q) s += std::conj(a.v[q]) * b.v[q];
    return s * a.box.wx();
}

Complex l2_inner(const SpinorField& a, const SpinorField& b) {
    require_same_box(a.box, b.box, "l2_inner");
    Complex s{};
    for (int m = 0; m < 2; ++m)
        for (std::size_t q = 0; q < a.c[m].size(); ++q) s += std::conj(a.c[m][q]) * b.c[m][q];
    return s * a.box.wx();
}

double l2_norm_sq(const ComplexField& a) {
    double s = 0.0;
    for (const auto& z : a.v) s += std::norm(z);
    return s * a.box.wx();
}

double l2_norm_sq(const SpinorField& a) {
    double s = 0.0;
    for (int m = 0; m < 2; ++m)
        for (const auto& z : a.c[m]) s += std::norm(z);
    return s * a.box.wx();
}

double l2_norm_sq(const RealField& a) {
    double s = 0.0;
    for (double x : a.v) s += x * x;
    return s * a.box.wx();
}

double l2_norm_sq(const VectorField& a) {
    double s = 0.0;
    for (int m = 0; m < 3; ++m)
        for (double x : a.c[m]) s += x * x;
    return s * a.box.wx();
}

void normalize(SpinorField& u) {
    const double n = l2_norm(u);
    if (n == 0.0) throw std::invalid_argument("normalize: zero field");
    const double inv = 1.0 / n;
    for (int m = 0; m < 2; ++m)
        for (auto& z : u.c[m]) z *= inv;
}

void axpy(Complex alpha, const SpinorField& x, SpinorField& y) {
    require_same_box(x.box, y.box, "axpy");
    for (int m = 0; m < 2; ++m)
        for (std::size_t q = 0; q < x.c[m].size(); ++q) y.c[m][q] += alpha * x.c[m][q];
}

void scale(SpinorField& x, Complex alpha) {
    for (int m = 0; m < 2; ++m)
        for (auto& z : x.c[m]) z *= alpha;
}

void scale(VectorField& x, double alpha) {
    for (int m = 0; m < 3; ++m)
        for (auto& z : x.c[m]) z *= alpha;
}

void axpy(double alpha, const VectorField& x, VectorField& y) {
    require_same_box(x.box, y.box, "axpy");
    for (int m = 0; m < 3; ++m)
        for (std::size_t q = 0; q < x.c[m].size(); ++q) y.c[m][q] += alpha * x.c[m][q];
}

SpinorField operator+(const SpinorField& a, const SpinorField& b) {
    SpinorField r = a;
    axpy(Complex(1.0, 0.0), b, r);
    return r;
}

SpinorField operator-(const SpinorField& a, const SpinorField& b) {
    SpinorField r = a;
    axpy(Complex(-1.0, 0.0), b, r);
    return r;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField r = a;
    axpy(1.0, b, r);
    return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField r = a;
    axpy(-1.0, b, r);
    return r;
}

RealField density(const SpinorField& u) {
    RealField rho(u.box);
    for (std::size_t q = 0; q < rho.size(); ++q)
        rho.v[q] = std::norm(u.c[0][q]) + std::norm(u.c[1][q]);
    return rho;
}

RealField spin_density(int m, const SpinorField& u) {
    RealField s(u.box);
    for (std::size_t q = 0; q < s.size(); ++q) {
        const Complex a = u.c[0][q], b = u.c[1][q];
        switch (m) {
            case 0: s.v[q] = 2.0 * std::real(std::conj(a) * b); break;
            case 1: s.v[q] = 2.0 * std::imag(std::conj(a) * b); break;
            default: s.v[q] = std::norm(a) - std::norm(b); break;
        }
    }
    return s;
}

SpinorField sigma_apply(int m, const SpinorField& u) {
    SpinorField r(u.box);
    const Complex I(0.0, 1.0);
    for (std::size_t q = 0; q < u.c[0].size(); ++q) {
        const Complex a = u.c[0][q], b = u.c[1][q];
        switch (m) {
            case 0:
                r.c[0][q] = b;
                r.c[1][q] = a;
                break;
            case 1:
                r.c[0][q] = -I * b;
                r.c[1][q] = I * a;
                break;
            default:
                r.c[0][q] = a;
                r.c[1][q] = -b;
                break;
        }
    }
    return r;
}

void pointwise_multiply(const RealField& w, SpinorField& u) {
    require_same_box(w.box, u.box, "pointwise_multiply");
    for (int m = 0; m < 2; ++m)
        for (std::size_t q = 0; q < w.size(); ++q) u.c[m][q] *= w.v[q];
}

void pointwise_multiply(const RealField& w, ComplexField& u) {
    require_same_box(w.box, u.box, "pointwise_multiply");
    for (std::size_t q = 0; q < w.size(); ++q) u.v[q] *= w.v[q];
}

SpinorField sigma_dot(const std::array<SpinorField, 3>& t) {
    SpinorField r(t[0].box);
    const Complex I(0.0, 1.0);
    for (std::size_t q = 0; q < r.c[0].size(); ++q) {
        const Complex t1u = t[0].c[0][q], t1d = t[0].c[1][q];
        const Complex t2u = t[1].c[0][q], t2d = t[1].c[1][q];
        const Complex t3u = t[2].c[0][q], t3d = t[2].c[1][q];
        r.c[0][q] = t1d - I * t2d + t3u;
        r.c[1][q] = t1u + I * t2u - t3d;
    }
    return r;
}

double min_image_radius(const SpectralBox& box, int i, int j, int l) {
    auto axis = [&](int idx) {
        double x = box.x_axis(idx);
        if (x > 0.5 * box.L) x -= box.L;
        return x;
    };
    const double x = axis(i), y = axis(j), z = axis(l);
    return std::sqrt(x * x + y * y + z * z);
}

}  // namespace msqed

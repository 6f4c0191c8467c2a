#include "msqed/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace msqed {
namespace {

// Plans are cached per grid size. fftw_execute_dft on distinct arrays is
// thread safe; planning is not and is serialized here.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<Complex> scratch(static_cast<std::size_t>(n) * n * n);
        auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan p = fftw_plan_dft_3d(n, n, n, ptr, ptr, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

  private:
    PlanCache() = default;
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

// The grid is centered at the origin while FFTW indexes from x=0; the shift
// is the checkerboard factor (-1)^{i+j+l} applied on the k side.
void apply_checkerboard(ComplexField& f) {
    const int n = f.box.N;
    std::size_t q = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l, ++q)
                if ((i + j + l) & 1) f.v[q] = -f.v[q];
}

void execute(ComplexField& f, int sign) {
    fftw_plan p = PlanCache::instance().get(f.box.N, sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(f.v.data());
    fftw_execute_dft(p, ptr, ptr);
}

}  // namespace

ComplexField forward_transform(const ComplexField& f) {
    ComplexField out = f;
    execute(out, FFTW_FORWARD);
    apply_checkerboard(out);
    const double wx = f.box.wx();
    for (auto& z : out.v) z *= wx;
    return out;
}

ComplexField inverse_transform(const ComplexField& fk) {
    ComplexField out = fk;
    apply_checkerboard(out);
    execute(out, FFTW_BACKWARD);
    const double scale = 1.0 / (fk.box.L * fk.box.L * fk.box.L);
    for (auto& z : out.v) z *= scale;
    return out;
}

ComplexField forward_transform(const RealField& f) {
    ComplexField tmp(f.box);
    for (std::size_t q = 0; q < f.size(); ++q) tmp.v[q] = Complex(f.v[q], 0.0);
    return forward_transform(tmp);
}

RealField inverse_transform_real(const ComplexField& fk) {
    ComplexField tmp = inverse_transform(fk);
    RealField out(fk.box);
    for (std::size_t q = 0; q < out.size(); ++q) out.v[q] = tmp.v[q].real();
    return out;
}

}  // namespace msqed

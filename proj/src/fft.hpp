#pragma once

#include <complex>
#include <vector>

namespace akweak::fft {

using cplx = std::complex<double>;

// Unnormalized DFT, sign -1: sum_k f_k e^{-2 pi i j k / n}.
void dft_1d(cplx* data, int n, int sign);

// DFT over `howmany` interleaved transforms: element k of transform m sits
// at base[m*dist + k*stride].
void dft_strided(cplx* base, int n, int howmany, int stride, int dist, int sign);

// Momentum of FFT bin j for the e^{+ipx} plane-wave convention:
// 2*pi*j'/(n*dx) with j' = j for j < n/2, j - n otherwise.
double fft_momentum(int j, int n, double dx);

// Periodic spectral translation f(x) -> f(x - s); exact for functions that
// have decayed at the box edges.
void spectral_shift(std::vector<cplx>& amp, double dx, double s);

}  // namespace akweak::fft

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace delaywave {

class DelayError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ring buffer of past velocity samples realizing the delay T = K dt.
///
/// `read(lag)` returns the sample pushed `lag` pushes ago (lag 1 is the most
/// recent). The line keeps K + 2 samples. When a ghost sample is set, a read
/// one past the oldest pushed sample resolves to it; this stands for v^{-1}.
template <class Sample>
class DelayLine {
public:
    using sample_type = Sample;

    explicit DelayLine(std::size_t k_delay) : m_k(k_delay), m_slots(k_delay + 2) {}

    [[nodiscard]] std::size_t k_delay() const { return m_k; }
    [[nodiscard]] std::size_t capacity() const { return m_slots.size(); }
    [[nodiscard]] std::size_t pushes() const { return m_pushes; }
    /// Number of samples currently readable (not counting the ghost).
    [[nodiscard]] std::size_t size() const { return m_pushes < capacity() ? m_pushes : capacity(); }

    void push(const Sample& sample)
    {
        m_head = (m_head + 1) % capacity();
        m_slots[m_head] = sample;
        ++m_pushes;
    }

    [[nodiscard]] const Sample& read(std::size_t lag) const
    {
        if (lag == 0) throw DelayError("delay read with lag 0: the current sample is not in the past");
        if (lag > capacity()) throw DelayError("sample expired: lag " + std::to_string(lag));
        if (lag > m_pushes) {
            if (lag == m_pushes + 1 && m_ghost) return *m_ghost;
            throw DelayError("delay underflow: lag " + std::to_string(lag) + " after " +
                             std::to_string(m_pushes) + " pushes");
        }
        return m_slots[(m_head + capacity() - (lag - 1)) % capacity()];
    }

    void set_ghost(const Sample& ghost) { m_ghost = ghost; }
    [[nodiscard]] const std::optional<Sample>& ghost() const { return m_ghost; }

private:
    std::size_t m_k;
    std::vector<Sample> m_slots;
    std::size_t m_head = 0;
    std::size_t m_pushes = 0;
    std::optional<Sample> m_ghost;
};

namespace detail {

inline double axpby(double a, double x, double b, double y) { return a * x + b * y; }

inline std::vector<double> axpby(double a, const std::vector<double>& x, double b, const std::vector<double>& y)
{
    if (x.size() != y.size()) throw DelayError("sample size mismatch");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
    return out;
}

}  // namespace detail

/// a * lhs + b * rhs, sample by sample. Both lines must have the same
/// history length. Reads at every valid lag agree with the inputs; the push
/// count of the result saturates at the capacity.
template <class Sample>
DelayLine<Sample> combine(double a, const DelayLine<Sample>& lhs, double b, const DelayLine<Sample>& rhs)
{
    if (lhs.k_delay() != rhs.k_delay() || lhs.pushes() != rhs.pushes())
        throw DelayError("cannot combine delay lines with different histories");
    DelayLine<Sample> out(lhs.k_delay());
    for (std::size_t lag = lhs.size(); lag >= 1; --lag)
        out.push(detail::axpby(a, lhs.read(lag), b, rhs.read(lag)));
    if (lhs.ghost().has_value() != rhs.ghost().has_value()) throw DelayError("ghost mismatch");
    if (lhs.ghost()) out.set_ghost(detail::axpby(a, *lhs.ghost(), b, *rhs.ghost()));
    return out;
}

}  // namespace delaywave

#include "malcev/domain.hpp"

#include <algorithm>
#include <limits>

namespace malcev {

namespace {

void check_domain(FiniteDomain dom) {
  if (dom.size < 1) throw input_error("domain size must be >= 1");
}

}  // namespace

std::uint64_t FiniteDomain::power(int m) const {
  check_domain(*this);
  if (m < 0) throw input_error("negative tuple length");
  std::uint64_t result = 1;
  const std::uint64_t k = static_cast<std::uint64_t>(size);
  for (int i = 0; i < m; ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / k) {
      throw resource_limit_error("k^m exceeds 64 bits (k=" +
                                 std::to_string(size) +
                                 ", m=" + std::to_string(m) + ")");
    }
    result *= k;
  }
  return result;
}

PointRank tuple_rank(std::span<const Value> t, FiniteDomain dom) {
  check_domain(dom);
  PointRank r = 0;
  for (Value v : t) {
    if (v >= dom.size) {
      throw input_error("tuple entry " + std::to_string(int(v)) +
                        " out of range for domain of size " +
                        std::to_string(dom.size));
    }
    r = r * static_cast<std::uint64_t>(dom.size) + v;
  }
  return r;
}

std::vector<Value> tuple_unrank(PointRank r, int m, FiniteDomain dom) {
  if (r >= dom.power(m)) {
    throw input_error("rank " + std::to_string(r) + " out of range for k=" +
                      std::to_string(dom.size) + ", m=" + std::to_string(m));
  }
  std::vector<Value> t(static_cast<std::size_t>(m));
  for (int i = m - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] =
        static_cast<Value>(r % static_cast<std::uint64_t>(dom.size));
    r /= static_cast<std::uint64_t>(dom.size);
  }
  return t;
}

std::string tuple_to_string(PointRank r, int m, FiniteDomain dom) {
  if (dom.size > 10) {
    throw input_error("digit strings are only defined for domains of size "
                      "<= 10");
  }
  const std::vector<Value> t = tuple_unrank(r, m, dom);
  std::string s;
  s.reserve(t.size());
  for (Value v : t) s.push_back(static_cast<char>('0' + v));
  return s;
}

PointRank tuple_from_string(const std::string& text, int m, FiniteDomain dom) {
  if (static_cast<int>(text.size()) != m) {
    throw input_error("tuple string '" + text + "' must have exactly " +
                      std::to_string(m) + " digits");
  }
  std::vector<Value> t;
  t.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw input_error("bad digit '" + std::string(1, c) + "' in tuple '" +
                        text + "'");
    }
    t.push_back(static_cast<Value>(c - '0'));
  }
  return tuple_rank(t, dom);
}

Operation::Operation(FiniteDomain dom, int arity, std::vector<Value> table)
    : dom_(dom), arity_(arity), table_(std::move(table)) {
  check_domain(dom_);
  if (arity_ < 1) throw input_error("operation arity must be >= 1");
  const std::uint64_t cells = dom_.power(arity_);
  if (table_.size() != cells) {
    throw input_error("operation table has " + std::to_string(table_.size()) +
                      " entries, expected " + std::to_string(cells));
  }
  for (Value v : table_) {
    if (v >= dom_.size) {
      throw input_error("operation table entry out of range");
    }
  }
}

Value Operation::operator()(std::span<const Value> args) const {
  if (static_cast<int>(args.size()) != arity_) {
    throw input_error("operation of arity " + std::to_string(arity_) +
                      " applied to " + std::to_string(args.size()) +
                      " arguments");
  }
  return table_[tuple_rank(args, dom_)];
}

std::strong_ordering operator<=>(const Operation& a, const Operation& b) {
  if (auto c = a.dom_.size <=> b.dom_.size; c != 0) return c;
  if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
  return a.table_ <=> b.table_;
}

Matrix::Matrix(FiniteDomain dom, int rows,
               std::vector<std::vector<Value>> columns)
    : dom_(dom), rows_(rows), columns_(std::move(columns)) {
  check_domain(dom_);
  if (rows_ < 1) throw input_error("matrix must have at least one row");
  for (const auto& col : columns_) {
    if (static_cast<int>(col.size()) != rows_) {
      throw input_error("matrix column has " + std::to_string(col.size()) +
                        " entries, expected " + std::to_string(rows_));
    }
    for (Value v : col) {
      if (v >= dom_.size) throw input_error("matrix entry out of range");
    }
  }
}

std::vector<Value> Matrix::row(int i) const {
  std::vector<Value> r;
  r.reserve(columns_.size());
  for (const auto& col : columns_) r.push_back(col[static_cast<std::size_t>(i)]);
  return r;
}

Operation projection(FiniteDomain dom, int n, int i) {
  if (i < 1 || i > n) {
    throw input_error("projection index " + std::to_string(i) +
                      " out of range 1.." + std::to_string(n));
  }
  const std::uint64_t cells = dom.power(n);
  std::vector<Value> table(cells);
  // Coordinate i-1 of the input tuple cycles with period k^(n-i).
  const std::uint64_t period = dom.power(n - i);
  for (std::uint64_t r = 0; r < cells; ++r) {
    table[r] = static_cast<Value>((r / period) %
                                  static_cast<std::uint64_t>(dom.size));
  }
  return Operation(dom, n, std::move(table));
}

namespace {

// Rebuilds f's table through an index permutation of the input tuple.
Operation permute_inputs(const Operation& f,
                         std::span<const int> source_of_target) {
  const int n = f.arity();
  const std::uint64_t cells = f.domain().power(n);
  std::vector<Value> table(cells);
  std::vector<Value> x(static_cast<std::size_t>(n));
  std::vector<Value> y(static_cast<std::size_t>(n));
  for (std::uint64_t r = 0; r < cells; ++r) {
    x = tuple_unrank(r, n, f.domain());
    for (int i = 0; i < n; ++i) {
      y[static_cast<std::size_t>(i)] =
          x[static_cast<std::size_t>(source_of_target[i])];
    }
    table[r] = f.value_at(tuple_rank(y, f.domain()));
  }
  return Operation(f.domain(), n, std::move(table));
}

}  // namespace

Operation zeta(const Operation& f) {
  const int n = f.arity();
  if (n == 1) return f;
  // (zeta f)(x1..xn) = f(x2..xn,x1)
  std::vector<int> src(static_cast<std::size_t>(n));
  for (int i = 0; i < n - 1; ++i) src[static_cast<std::size_t>(i)] = i + 1;
  src[static_cast<std::size_t>(n - 1)] = 0;
  return permute_inputs(f, src);
}

Operation tau(const Operation& f) {
  const int n = f.arity();
  if (n == 1) return f;
  std::vector<int> src(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) src[static_cast<std::size_t>(i)] = i;
  std::swap(src[0], src[1]);
  return permute_inputs(f, src);
}

Operation delta(const Operation& f) {
  const int n = f.arity();
  if (n == 1) return f;
  const FiniteDomain dom = f.domain();
  const std::uint64_t cells = dom.power(n - 1);
  std::vector<Value> table(cells);
  std::vector<Value> y(static_cast<std::size_t>(n));
  for (std::uint64_t r = 0; r < cells; ++r) {
    const std::vector<Value> x = tuple_unrank(r, n - 1, dom);
    y[0] = x[0];
    y[1] = x[0];
    for (int i = 1; i < n - 1; ++i) y[static_cast<std::size_t>(i + 1)] = x[static_cast<std::size_t>(i)];
    table[r] = f.value_at(tuple_rank(y, dom));
  }
  return Operation(dom, n - 1, std::move(table));
}

Operation nabla(const Operation& f) {
  const int n = f.arity();
  const FiniteDomain dom = f.domain();
  const std::uint64_t cells = dom.power(n + 1);
  const std::uint64_t inner = dom.power(n);
  std::vector<Value> table(cells);
  // The first coordinate is most significant, so the table is f's table
  // repeated once per value of the dummy first argument.
  for (std::uint64_t r = 0; r < cells; ++r) {
    table[r] = f.value_at(r % inner);
  }
  return Operation(dom, n + 1, std::move(table));
}

Operation star(const Operation& f, const Operation& g) {
  if (f.domain() != g.domain()) {
    throw input_error("star requires operations over the same domain");
  }
  const FiniteDomain dom = f.domain();
  const int n = f.arity();
  const int m = g.arity();
  const int arity = m + n - 1;
  const std::uint64_t cells = dom.power(arity);
  std::vector<Value> table(cells);
  std::vector<Value> fx(static_cast<std::size_t>(n));
  for (std::uint64_t r = 0; r < cells; ++r) {
    const std::vector<Value> x = tuple_unrank(r, arity, dom);
    fx[0] = g(std::span<const Value>(x).subspan(0, static_cast<std::size_t>(m)));
    for (int i = 1; i < n; ++i) {
      fx[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(m + i - 1)];
    }
    table[r] = f(fx);
  }
  return Operation(dom, arity, std::move(table));
}

std::vector<Value> apply_rows(const Operation& f, const Matrix& m) {
  if (f.domain() != m.domain()) {
    throw input_error("apply_rows requires a shared domain");
  }
  if (m.cols() != f.arity()) {
    throw input_error("apply_rows: matrix has " + std::to_string(m.cols()) +
                      " columns, operation arity is " +
                      std::to_string(f.arity()));
  }
  std::vector<Value> out(static_cast<std::size_t>(m.rows()));
  std::vector<Value> row(static_cast<std::size_t>(m.cols()));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      row[static_cast<std::size_t>(j)] =
          m.column(j)[static_cast<std::size_t>(i)];
    }
    out[static_cast<std::size_t>(i)] = f(row);
  }
  return out;
}

Matrix hconcat(std::span<const Matrix> parts) {
  if (parts.empty()) throw input_error("hconcat needs at least one matrix");
  const FiniteDomain dom = parts.front().domain();
  const int rows = parts.front().rows();
  std::vector<std::vector<Value>> columns;
  for (const Matrix& part : parts) {
    if (part.domain() != dom || part.rows() != rows) {
      throw input_error("hconcat: row count or domain mismatch");
    }
    columns.insert(columns.end(), part.columns().begin(),
                   part.columns().end());
  }
  return Matrix(dom, rows, std::move(columns));
}

}  // namespace malcev

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dimass {

//! Base class for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! A value or index outside its admissible range (bad caller input).
class InvalidInput : public Error
{
  public:
    using Error::Error;
};

//! Inconsistent or missing data: files, calibration state, comparisons.
class DataError : public Error
{
  public:
    using Error::Error;
};

//! Malformed text input; carries the 1-based line and column.
class ParseError : public DataError
{
  public:
    ParseError(std::size_t line, std::size_t column, std::string const& what)
        : DataError("line " + std::to_string(line) + ", column "
                    + std::to_string(column) + ": " + what)
        , line_(line)
        , column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace dimass

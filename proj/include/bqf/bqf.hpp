#ifndef BQF_BQF_HPP
#define BQF_BQF_HPP

#include "bqf/errors.hpp"
#include "bqf/forms.hpp"
#include "bqf/integers.hpp"
#include "bqf/io.hpp"
#include "bqf/nesting.hpp"
#include "bqf/oracle.hpp"
#include "bqf/reduction.hpp"

#endif /* BQF_BQF_HPP */

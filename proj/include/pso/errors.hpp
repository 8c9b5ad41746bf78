#pragma once

#include <stdexcept>
#include <string>

namespace pso {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class UnknownClass : public Error {
public:
    using Error::Error;
};

class UnknownParent : public Error {
public:
    using Error::Error;
};

class DuplicateClass : public Error {
public:
    using Error::Error;
};

class UnknownInstance : public Error {
public:
    using Error::Error;
};

class DuplicateInstance : public Error {
public:
    using Error::Error;
};

class UnsupportedRelation : public Error {
public:
    using Error::Error;
};

class InvalidDivisions : public Error {
public:
    using Error::Error;
};

class UntaggedFaceRequired : public Error {
public:
    using Error::Error;
};

class IllPosed : public Error {
public:
    using Error::Error;
};

class UnsupportedPhysics : public Error {
public:
    using Error::Error;
};

class MalformedCard : public Error {
public:
    MalformedCard(const std::string& what, int line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace pso

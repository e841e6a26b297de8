namespace ratnest {
}  // namespace ratnest

namespace qsp {
}

import sparta.globalopt


# If there are no other tests this one is needed -> otherwise pytest will fail
def test_package() -> None:
    sparta.globalopt
    assert True
